//! `cryptolexia`: encrypt, decrypt and attack the three classical ciphers,
//! check a challenge bank, or run the game server.
//!
//! Exit status is 0 on success, 1 for i/o failures and 2 for usage or
//! validation errors.

mod demo;
mod paint;

use std::fs;
use std::io::{self, Read};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cryptolexia_core::analysis::{caesar_crack, digraph_frequency, vigenere_key_length, vigenere_recover_key, MAX_KEY_LENGTH};
use cryptolexia_core::game::{ChallengeBank, ChallengeKey};
use cryptolexia_core::{normalize, regroup, CipherKind, FrequencyTable, Policy};
use cryptolexia_service::{AppState, ServeConfig, StoreError, DEFAULT_PORT, DEFAULT_STORE};

use paint::Paint;

#[derive(Debug, Parser)]
#[command(name = "cryptolexia", version, about = "Classical ciphers, their attacks, and the CryptoLexia game server")]
struct Cli {
    /// Colour PASS/FAIL markers with ANSI escapes.
    #[arg(long, global = true)]
    color: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encrypt text; prints the spaced ciphertext.
    Encrypt(CipherArgs),
    /// Decrypt text, keeping the ciphertext's word spacing.
    Decrypt(CipherArgs),
    /// Attack a ciphertext.
    #[command(subcommand)]
    Crack(Crack),
    /// Run the worked examples and compare them with their expected output.
    Demo {
        #[arg(value_enum, default_value_t = DemoSet::Paper)]
        set: DemoSet,
    },
    /// Challenge bank tools.
    #[command(subcommand)]
    Bank(Bank),
    /// Run the HTTP game server.
    Serve {
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value = DEFAULT_STORE)]
        store: PathBuf,
        /// Challenge bank TOML file; the bundled bank when omitted.
        #[arg(long)]
        bank: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cipher {
    Caesar,
    Vigenere,
    Playfair,
}

impl From<Cipher> for CipherKind {
    fn from(c: Cipher) -> Self {
        match c {
            Cipher::Caesar => CipherKind::Caesar,
            Cipher::Vigenere => CipherKind::Vigenere,
            Cipher::Playfair => CipherKind::Playfair,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoSet {
    Paper,
}

#[derive(Debug, Args)]
struct Input {
    /// The text itself.
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    /// Read the text from a file, or standard input with `-`.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CipherArgs {
    #[arg(value_enum)]
    cipher: Cipher,
    /// Shift (0-25) for caesar, key word otherwise.
    #[arg(long, allow_hyphen_values = true)]
    key: String,
    #[command(flatten)]
    input: Input,
}

#[derive(Debug, Subcommand)]
enum Crack {
    /// Rank all 26 shifts by chi-squared distance from English.
    Caesar {
        #[command(flatten)]
        input: Input,
    },
    /// Estimate the key length, then recover the key column by column.
    Vigenere {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_keylen: Option<usize>,
    },
    /// Most frequent digraphs of a Playfair ciphertext.
    Playfair {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
}

#[derive(Debug, Subcommand)]
enum Bank {
    /// Re-encrypt every answer and compare it with the stored ciphertext.
    Validate {
        #[arg(long)]
        bank: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let paint = Paint::new(cli.color);
    match run(cli.command, paint) {
        Ok(code) => code,
        Err(failure) => {
            let (Failure::Io(msg) | Failure::Usage(msg)) = &failure;
            eprintln!("cryptolexia: {msg}");
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command, paint: Paint) -> Result<ExitCode, Failure> {
    match command {
        Command::Encrypt(args) => {
            let key = ChallengeKey::parse(args.cipher.into(), &args.key).map_err(usage)?;
            println!("{}", key.encrypt_spaced(&read_input(&args.input)?));
        }
        Command::Decrypt(args) => {
            let key = ChallengeKey::parse(args.cipher.into(), &args.key).map_err(usage)?;
            println!("{}", decrypt(&key, &read_input(&args.input)?)?);
        }
        Command::Crack(crack) => crack_report(crack)?,
        Command::Demo { set: DemoSet::Paper } => {
            let checks = demo::worked_examples();
            for check in &checks {
                println!("{}", check.line(paint));
            }
            if checks.iter().any(|c| !c.pass) {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Bank(Bank::Validate { bank }) => return validate_bank(&bank, paint),
        Command::Serve { port, host, store, bank } => serve(SocketAddr::new(host, port), store, bank)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match (&input.text, &input.input) {
        (Some(text), _) => Ok(text.clone()),
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
            Ok(text)
        }
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        (None, None) => Err(usage("give the text with --text or --in FILE")),
    }
}

/// Decrypt and lay the plaintext out in the ciphertext's word lengths.
fn decrypt(key: &ChallengeKey, input: &str) -> Result<String, Failure> {
    let policy = match key.cipher() {
        CipherKind::Playfair => Policy::Playfair,
        _ => Policy::Standard,
    };
    let cipher = normalize(input, policy);
    let plain = key.decrypt(cipher.letters()).map_err(usage)?;
    regroup(&plain, cipher.layout()).map_err(usage)
}

fn letters_to_crack(input: &Input, policy: Policy) -> Result<String, Failure> {
    let text = normalize(&read_input(input)?, policy);
    if text.is_empty() {
        return Err(usage("nothing to crack: the text has no letters"));
    }
    Ok(text.letters().to_string())
}

fn crack_report(crack: Crack) -> Result<(), Failure> {
    let table = FrequencyTable::english();
    match crack {
        Crack::Caesar { input } => {
            let cipher = letters_to_crack(&input, Policy::Standard)?;
            println!("rank\tshift\tchi2\tpreview");
            for (i, c) in caesar_crack(&cipher, &table).map_err(usage)?.iter().enumerate() {
                println!("{}\t{}\t{:.3}\t{}", i + 1, c.shift, c.score, c.preview);
            }
        }
        Crack::Vigenere { input, max_keylen } => {
            let cipher = letters_to_crack(&input, Policy::Standard)?;
            let max_len = max_keylen.unwrap_or_else(|| (cipher.len() / 2).clamp(1, MAX_KEY_LENGTH));
            let ranking = vigenere_key_length::<f64>(&cipher, max_len).map_err(usage)?;
            println!("rank\tlength\tmean_ioc");
            for (i, c) in ranking.iter().enumerate() {
                println!("{}\t{}\t{:.4}", i + 1, c.length, c.mean_ioc);
            }
            let length = ranking[0].length;
            let key = vigenere_recover_key(&cipher, length, &table).map_err(usage)?;
            let plain = ChallengeKey::Vigenere(key.clone()).decrypt(&cipher).map_err(usage)?;
            println!("key length: {length}");
            println!("key: {key}");
            println!("plaintext: {plain}");
        }
        Crack::Playfair { input, top } => {
            let cipher = letters_to_crack(&input, Policy::Playfair)?;
            let hist = digraph_frequency(&cipher).map_err(usage)?;
            println!("rank\tdigraph\tcount");
            for (i, (pair, n)) in hist.top(top).into_iter().enumerate() {
                println!("{}\t{pair}\t{n}", i + 1);
            }
            println!("digraphs: {} ({} distinct)", hist.total(), hist.distinct());
        }
    }
    Ok(())
}

fn validate_bank(path: &PathBuf, paint: Paint) -> Result<ExitCode, Failure> {
    let source = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let lines = match ChallengeBank::audit(&source) {
        Ok(lines) => lines,
        Err(e) => {
            println!("{} {e}", paint.fail("FAIL"));
            return Ok(ExitCode::from(2));
        }
    };
    for line in &lines {
        if line.ok() {
            println!("{} {}", paint.pass("OK"), line.subject);
        } else {
            println!("{} {}: {}", paint.fail("FAIL"), line.subject, line.problems.join("; "));
        }
    }
    Ok(if lines.iter().all(|l| l.ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn serve(addr: SocketAddr, store: PathBuf, bank: Option<PathBuf>) -> Result<(), Failure> {
    let bank = match bank {
        None => ChallengeBank::bundled(),
        Some(path) => {
            let source = fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            ChallengeBank::parse(&source).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
    };
    let state = AppState::open(bank, &store).map_err(|e| match e {
        StoreError::Io { .. } => Failure::Io(e.to_string()),
        _ => usage(e),
    })?;
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    runtime
        .block_on(cryptolexia_service::serve(ServeConfig { addr, store }, state))
        .map_err(|e| Failure::Io(format!("server: {e}")))
}
