//! Acceptance gate. Every criterion runs, prints one PASS/FAIL line and the
//! test fails if any of them did.
//!
//!     cargo test -p cryptolexia-service --test acceptance -- --nocapture

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use axum::http::StatusCode;
use common::{assert_no_answer, mask_token, Client};
use cryptolexia_core::analysis::{caesar_crack, vigenere_key_length, vigenere_recover_key};
use cryptolexia_core::cipher::{caesar, playfair, vigenere};
use cryptolexia_core::data::english_sample_letters;
use cryptolexia_core::game::{points_for, ChallengeBank, GameState};
use cryptolexia_core::{normalize, regroup, CaesarKey, FrequencyTable, PlayfairMatrix, Policy, VigenereKey};
use cryptolexia_service::api::{ChallengeView, LevelView};
use cryptolexia_service::state::Snapshot;
use cryptolexia_service::store::{self, Fault, SaveStage, StoreDocument};
use cryptolexia_service::{AppState, PlayerSettings};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

type Outcome = Result<(), String>;

/// method, path, token, body, expected status, expected body
type GoldenCase<'a> = (&'a str, &'a str, Option<&'a str>, Option<&'a str>, StatusCode, serde_json::Value);

type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(elapsed: Duration, budget: Duration) -> Outcome {
    ensure!(elapsed < budget, "took {elapsed:?}, budget {budget:?}");
    Ok(())
}

fn runtime() -> tokio::runtime::Runtime {
    tokio::runtime::Builder::new_multi_thread()
        .worker_threads(2)
        .enable_all()
        .build()
        .unwrap()
}

fn caesar_golden() -> Outcome {
    let start = Instant::now();
    let plain = normalize("all good things", Policy::Standard);
    let cipher = caesar::encrypt(&plain, CaesarKey::new(7).map_err(|e| e.to_string())?);
    let rendered = regroup(&cipher, plain.layout()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(rendered == "hss nvvk aopunz", "got {rendered:?}");
    within(elapsed, Duration::from_millis(1))
}

// The printed example has 'w' at letter 6 where the tableau gives 'v'.
fn vigenere_golden_diverges_from_printed_at_index_6() -> Outcome {
    let key = VigenereKey::new("secure").unwrap();
    let extended = vigenere::extend_key(&key, 13);
    ensure!(extended == "securesecures", "extension {extended:?}");

    let plain = normalize("all good things", Policy::Standard);
    let cipher = vigenere::encrypt(&plain, &key);
    let oracle: String = plain
        .letters()
        .bytes()
        .zip(extended.bytes())
        .map(|(p, k)| tableau_cell(k, p))
        .collect();
    ensure!(cipher == oracle, "cipher {cipher:?} oracle {oracle:?}");
    let rendered = regroup(&cipher, plain.layout()).unwrap();
    ensure!(rendered == "spn afsv xjcekk", "rendered {rendered:?}");

    let printed = "spnafswxjcekk";
    let diffs: Vec<usize> = (0..13).filter(|&i| cipher.as_bytes()[i] != printed.as_bytes()[i]).collect();
    ensure!(diffs == [6], "divergence at {diffs:?}");
    Ok(())
}

/// Row `key`, column `plain` of a tableau built by rotating the alphabet.
fn tableau_cell(key: u8, plain: u8) -> char {
    let alphabet: Vec<char> = ('a'..='z').collect();
    let row: Vec<char> = alphabet.iter().cycle().skip((key - b'a') as usize).take(26).copied().collect();
    row[(plain - b'a') as usize]
}

fn playfair_goldens() -> Outcome {
    let matrix = PlayfairMatrix::from_keyword("secure");
    let expected = ["secur", "abdfg", "hiklm", "nopqt", "vwxyz"];
    ensure!(matrix.rows() == expected, "matrix {:?}", matrix.rows());

    let plain = normalize("all good things", Policy::Playfair);
    let pairs = playfair::digraphs(&plain).pairs();
    ensure!(pairs == ["al", "lg", "ox", "od", "th", "in", "gs"], "digraphs {pairs:?}");

    let cipher = playfair::encrypt(&plain, &matrix).spaced();
    ensure!(cipher == "fhm fpwpb nmhoar", "cipher {cipher:?}");

    for (pair, want) in [("sh", "an"), ("hk", "il"), ("ed", "cb")] {
        let got = playfair::encrypt(&normalize(pair, Policy::Playfair), &matrix).letters;
        ensure!(got == want, "{pair} -> {got}, want {want}");
    }
    Ok(())
}

fn random_letters(rng: &mut StdRng, max: usize) -> String {
    let len = rng.random_range(0..=max);
    (0..len).map(|_| rng.random_range(b'a'..=b'z') as char).collect()
}

fn random_words(rng: &mut StdRng) -> String {
    let n = rng.random_range(0..8);
    (0..n)
        .map(|_| {
            let len = rng.random_range(1..=8);
            (0..len).map(|_| rng.random_range(b'a'..=b'z') as char).collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn random_key(rng: &mut StdRng) -> String {
    let len = rng.random_range(1..=12);
    (0..len).map(|_| rng.random_range(b'a'..=b'z') as char).collect()
}

fn round_trips() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..1000 {
        let text = random_letters(&mut rng, 200);
        let key = CaesarKey::new(rng.random_range(0..26)).unwrap();
        let cipher = caesar::encrypt(&normalize(&text, Policy::Standard), key);
        let back = caesar::decrypt(&cipher, key).map_err(|e| e.to_string())?;
        ensure!(back == text, "caesar case {case}: {text:?} came back {back:?}");
    }
    for case in 0..1000 {
        let text = random_letters(&mut rng, 200);
        let key = VigenereKey::new(&random_key(&mut rng)).unwrap();
        let cipher = vigenere::encrypt(&normalize(&text, Policy::Standard), &key);
        let back = vigenere::decrypt(&cipher, &key).map_err(|e| e.to_string())?;
        ensure!(back == text, "vigenere case {case}: {text:?} came back {back:?}");
    }
    for case in 0..1000 {
        let plain = normalize(&random_words(&mut rng), Policy::Playfair);
        let matrix = PlayfairMatrix::from_keyword(&random_key(&mut rng));
        let cipher = playfair::encrypt(&plain, &matrix);
        let back = playfair::decrypt(&cipher.letters, &matrix).map_err(|e| e.to_string())?;
        let stream = playfair::digraphs(&plain).stream();
        ensure!(back == stream, "playfair case {case}: {stream:?} came back {back:?}");
    }
    within(start.elapsed(), Duration::from_secs(5))
}

fn attacks() -> Outcome {
    let start = Instant::now();
    let sample = english_sample_letters();
    ensure!(sample.len() >= 300, "fixture has {} letters", sample.len());
    let table = FrequencyTable::english();
    let plain = normalize(&sample, Policy::Standard);
    for shift in 0..26 {
        let cipher = caesar::encrypt(&plain, CaesarKey::new(shift).unwrap());
        let top = caesar_crack(&cipher, &table).map_err(|e| e.to_string())?[0].shift;
        ensure!(top as i64 == shift, "shift {shift} ranked {top} first");
    }

    let recover = || -> Result<(usize, String), String> {
        let cipher = vigenere::encrypt(&plain, &VigenereKey::new("secure").unwrap());
        let ranking = vigenere_key_length::<f64>(&cipher, 20).map_err(|e| e.to_string())?;
        let length = ranking[0].length;
        let key = vigenere_recover_key(&cipher, length, &table).map_err(|e| e.to_string())?;
        Ok((length, key.as_str().to_string()))
    };
    let first = recover()?;
    ensure!(first == (6, "secure".to_string()), "recovered {first:?}");
    ensure!(recover()? == first, "second run differed");
    within(start.elapsed(), Duration::from_secs(1))
}

enum Command {
    Submit { player: usize, challenge: usize, correct: bool },
    Hint { player: usize, challenge: usize, index: usize },
}

fn engine_properties() -> Outcome {
    const PLAYERS: [&str; 3] = ["owl", "fox", "elk"];
    let start = Instant::now();
    let bank = ChallengeBank::bundled();
    let ids: Vec<String> = bank.challenges().iter().map(|c| c.id.clone()).collect();

    for level in 1..=3u8 {
        for index in 0..20 {
            ensure!(points_for(level, index + 1) > points_for(level, index), "points_for not monotone in index");
            if level < 3 {
                ensure!(points_for(level + 1, index) > points_for(level, index), "points_for not monotone in level");
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(42);
    for sequence in 0..500 {
        let mut state = GameState::new();
        for p in PLAYERS {
            state.create_session(p).unwrap();
        }
        let steps = rng.random_range(0..60);
        for _ in 0..steps {
            let cmd = if rng.random_bool(0.8) {
                Command::Submit {
                    player: rng.random_range(0..3),
                    challenge: rng.random_range(0..ids.len()),
                    correct: rng.random_bool(0.6),
                }
            } else {
                Command::Hint {
                    player: rng.random_range(0..3),
                    challenge: rng.random_range(0..ids.len()),
                    index: rng.random_range(0..4),
                }
            };
            let before = serde_json::to_string(&state).unwrap();
            match cmd {
                Command::Submit { player, challenge, correct } => {
                    let c = bank.challenge(&ids[challenge]).unwrap();
                    let attempt = if correct { c.answer.clone() } else { format!("{} no", c.answer) };
                    let solved = state.session(PLAYERS[player]).unwrap().has_solved(&c.id);
                    match state.submit(&bank, PLAYERS[player], &c.id, &attempt) {
                        Ok(v) => {
                            ensure!(v.correct == correct, "seq {sequence}: verdict for {}", c.id);
                            if !correct || solved {
                                ensure!(v.score_delta == 0, "seq {sequence}: repeat or wrong answer scored");
                                ensure!(serde_json::to_string(&state).unwrap() == before, "seq {sequence}: state changed without a score");
                            } else {
                                ensure!(v.score_delta == c.points as u64, "seq {sequence}: delta {}", v.score_delta);
                            }
                        }
                        Err(_) => {
                            ensure!(serde_json::to_string(&state).unwrap() == before, "seq {sequence}: refused submit changed state");
                            let unlocked = state.session(PLAYERS[player]).unwrap().unlocked;
                            ensure!(c.level > unlocked, "seq {sequence}: open level refused");
                        }
                    }
                }
                Command::Hint { player, challenge, index } => {
                    let _ = state.hint(&bank, PLAYERS[player], &ids[challenge], index);
                    ensure!(serde_json::to_string(&state).unwrap() == before, "seq {sequence}: hint changed state");
                }
            }
            state.check(&bank).map_err(|e| format!("seq {sequence}: {e}"))?;
            for s in state.sessions.values() {
                let sum: u64 = s.solved.iter().map(|id| bank.challenge(id).unwrap().points as u64).sum();
                ensure!(s.total_score == sum, "seq {sequence}: {} has {} but solved {sum}", s.handle, s.total_score);
                for id in &s.solved {
                    let level = bank.challenge(id).unwrap().level;
                    for earlier in 1..level {
                        ensure!(
                            bank.challenges_in(earlier).all(|c| s.solved.contains(&c.id)),
                            "seq {sequence}: {id} solved before level {earlier} was cleared"
                        );
                    }
                }
                // a session holds progress only: no attempt counts, no clocks
                let fields: Vec<String> = serde_json::to_value(s)
                    .unwrap()
                    .as_object()
                    .unwrap()
                    .keys()
                    .cloned()
                    .collect();
                ensure!(
                    fields == ["handle", "last_solve", "solved", "total_score", "unlocked"],
                    "session fields {fields:?}"
                );
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))
}

async fn service_goldens() -> Outcome {
    let client = Client::in_memory();
    let bank = client.state.bank().clone();

    let created = client.post("/api/players", None, r#"{"handle":"owl42"}"#).await;
    ensure!(created.status == StatusCode::CREATED, "create {}", created.status);
    let token = created.json()["session_token"].as_str().unwrap().to_string();
    let golden = json!({
        "session_token": "<token>",
        "session": { "handle": "owl42", "unlocked": 1, "solved": [], "total_score": 0 }
    });
    ensure!(mask_token(created.json()) == golden, "create {}", created.text);

    let t = Some(token.as_str());
    let cases: Vec<GoldenCase> = vec![
        ("POST", "/api/players", None, Some(r#"{"handle":"owl42"}"#), StatusCode::CONFLICT,
            json!({"error": {"code": "handle_taken", "message": "nickname \"owl42\" is already taken"}})),
        ("GET", "/api/levels", None, None, StatusCode::UNAUTHORIZED,
            json!({"error": {"code": "unauthorized", "message": "missing or unknown session token"}})),
        ("GET", "/api/challenges/letter-opening/hints/0", t, None, StatusCode::OK,
            json!({"text": "Try moving every letter back by one, then two, then three places."})),
        ("GET", "/api/challenges/letter-opening/hints/7", t, None, StatusCode::NOT_FOUND,
            json!({"error": {"code": "not_found", "message": "no such hint"}})),
        ("POST", "/api/answers", t, Some(r#"{"challenge_id":"letter-opening","attempt":"meet at the new palace"}"#), StatusCode::OK,
            json!({"correct": false, "score_delta": 0, "total_score": 0, "newly_unlocked": null})),
        ("POST", "/api/answers", t, Some(r#"{"challenge_id":"letter-opening","attempt":"Meet at the old palace"}"#), StatusCode::OK,
            json!({"correct": true, "score_delta": 50, "total_score": 50, "newly_unlocked": null})),
        ("POST", "/api/answers", t, Some(r#"{"challenge_id":"letter-opening","attempt":"meet at the old palace"}"#), StatusCode::OK,
            json!({"correct": true, "score_delta": 0, "total_score": 50, "newly_unlocked": null})),
        ("GET", "/api/scoreboard", None, None, StatusCode::OK,
            json!({"entries": [{"rank": 1, "handle": "owl42", "total_score": 50}]})),
        ("GET", "/api/settings", t, None, StatusCode::OK,
            json!({"dyslexia_font": true, "letter_spacing": "wide", "line_height": "relaxed", "theme": "light", "tts_enabled": true})),
        ("PUT", "/api/settings", t, Some(r#"{"dyslexia_font":true,"letter_spacing":"wider","line_height":"relaxed","theme":"dark","tts_enabled":false}"#), StatusCode::OK,
            json!({"dyslexia_font": true, "letter_spacing": "wider", "line_height": "relaxed", "theme": "dark", "tts_enabled": false})),
    ];
    for (method, uri, token, body, status, want) in cases {
        let reply = client.send(method.parse().unwrap(), uri, token, body).await;
        ensure!(reply.status == status, "{method} {uri}: status {} body {}", reply.status, reply.text);
        ensure!(reply.json() == want, "{method} {uri}: {}", reply.text);
    }

    let levels = client.get("/api/levels", t).await.json();
    ensure!(levels["levels"][0]["solved_count"] == 1 && levels["levels"][1]["locked"] == true, "levels {levels}");
    let challenges = client.get("/api/levels/1/challenges", t).await.json();
    ensure!(
        challenges["challenges"][0]
            == json!({
                "id": "letter-opening",
                "index": 0,
                "prompt": bank.challenges_in(1).next().unwrap().prompt,
                "ciphertext": "phhw dw wkh rog sdodfh",
                "key_disclosure": {"kind": "none"},
                "hint_count": 2,
                "points": 50,
                "solved": true
            }),
        "challenges {challenges}"
    );
    let locked = client.get("/api/levels/2/challenges", t).await;
    ensure!(locked.status == StatusCode::FORBIDDEN, "locked level {}", locked.status);
    Ok(())
}

async fn answer_leak_scan() -> Outcome {
    let bank = ChallengeBank::bundled();
    // the serializers themselves, with every flag combination
    for c in bank.challenges() {
        for solved in [false, true] {
            assert_no_answer(&bank, &serde_json::to_string(&ChallengeView::new(c, solved)).unwrap());
        }
    }
    for l in bank.levels() {
        let view = LevelView {
            number: l.number,
            cipher: l.cipher,
            title: l.title.clone(),
            story_panel: Some(l.story_panel.clone()),
            locked: false,
            challenge_count: 3,
            solved_count: 3,
        };
        assert_no_answer(&bank, &serde_json::to_string(&view).unwrap());
    }
    // and every response a full playthrough produces
    let client = Client::in_memory();
    let token = client.join("owl42").await;
    for level in 1..=3u8 {
        let mut replies = vec![
            client.get("/api/levels", Some(&token)).await,
            client.get(&format!("/api/levels/{level}/challenges"), Some(&token)).await,
        ];
        for c in bank.challenges_in(level) {
            for k in 0..=c.hints.len() {
                replies.push(client.get(&format!("/api/challenges/{}/hints/{k}", c.id), Some(&token)).await);
            }
            replies.push(client.answer(&token, &c.id, "not it").await);
            replies.push(client.answer(&token, &c.id, &c.answer).await);
        }
        replies.push(client.get("/api/scoreboard", None).await);
        for r in &replies {
            assert_no_answer(&bank, &r.text);
        }
    }
    let done = client.get("/api/levels", Some(&token)).await.json();
    ensure!(done["levels"][2]["solved_count"] == 3, "playthrough incomplete: {done}");
    Ok(())
}

/// The next change to make: an unsolved open challenge, else a settings flip.
fn next_change(doc: &StoreDocument, bank: &ChallengeBank, player: usize) -> (String, Option<(String, String)>, PlayerSettings) {
    let record = &doc.sessions[player];
    let session = &record.session;
    let pending = bank
        .challenges()
        .iter()
        .find(|c| session.is_unlocked(c.level) && !session.has_solved(&c.id))
        .map(|c| (c.id.clone(), c.answer.clone()));
    let mut settings = doc.settings.get(&session.handle).copied().unwrap_or_default();
    settings.tts_enabled = !settings.tts_enabled;
    (record.token.clone(), pending, settings)
}

async fn crash_safety() -> Outcome {
    let bank = ChallengeBank::bundled();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("store.json");
    {
        let client = Client::new(AppState::open(bank.clone(), &path).unwrap());
        for h in ["owl", "fox", "elk"] {
            client.join(h).await;
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let (mut crashes, mut commits) = (0, 0);
    for iteration in 0..100 {
        let old = store::load(&path, &bank).map_err(|e| format!("iteration {iteration}: {e}"))?;
        let player = rng.random_range(0..old.sessions.len());
        let (token, pending, settings) = next_change(&old, &bank, player);
        let handle = old.sessions[player].session.handle.clone();

        // what the store must hold if this change lands
        let mut expected = Snapshot::from_document(&old);
        match &pending {
            Some((id, answer)) if rng.random_bool(0.7) => {
                expected.game.submit(&bank, &handle, id, answer).unwrap();
            }
            _ => {
                expected.settings.insert(handle.clone(), settings);
            }
        }
        let new = expected.to_document();
        let answering = new.solve_ordinal != old.solve_ordinal;

        let size = serde_json::to_vec_pretty(&new).unwrap().len();
        let crash_at = match rng.random_range(0..5) {
            0 => Some(SaveStage::Created),
            1 => Some(SaveStage::Wrote(rng.random_range(1..=size))),
            2 => Some(SaveStage::Synced),
            3 => Some(SaveStage::Renamed),
            _ => None,
        };
        let state = AppState::open(bank.clone(), &path).map_err(|e| format!("iteration {iteration}: {e}"))?;
        state.set_fault_hook(move |stage| match (crash_at, stage) {
            (Some(SaveStage::Wrote(n)), SaveStage::Wrote(m)) if m >= n => Fault::Crash,
            (Some(at), stage) if at == stage => Fault::Crash,
            _ => Fault::Continue,
        });
        let client = Client::new(state);
        let reply = if answering {
            let (id, answer) = pending.unwrap();
            client.answer(&token, &id, &answer).await
        } else {
            let body = serde_json::to_string(&settings).unwrap();
            client.put("/api/settings", Some(&token), &body).await
        };
        drop(client);

        let on_disk = store::load(&path, &bank).map_err(|e| format!("iteration {iteration}: unreadable store: {e}"))?;
        match crash_at {
            None => {
                ensure!(reply.status == StatusCode::OK, "iteration {iteration}: {}", reply.text);
                ensure!(on_disk == new, "iteration {iteration}: committed change missing");
                commits += 1;
            }
            Some(stage) => {
                ensure!(reply.status == StatusCode::INTERNAL_SERVER_ERROR, "iteration {iteration}: crash at {stage:?} not reported");
                let want = if stage == SaveStage::Renamed { &new } else { &old };
                ensure!(&on_disk == want, "iteration {iteration}: crash at {stage:?} left a mixed store");
                crashes += 1;
            }
        }
    }
    ensure!(crashes > 0 && commits > 0, "{crashes} crashes, {commits} commits");
    Ok(())
}

fn service_contract() -> Outcome {
    let start = Instant::now();
    let rt = runtime();
    rt.block_on(service_goldens()).map_err(|e| format!("golden: {e}"))?;
    rt.block_on(answer_leak_scan()).map_err(|e| format!("leak scan: {e}"))?;
    rt.block_on(crash_safety()).map_err(|e| format!("fault injection: {e}"))?;
    within(start.elapsed(), Duration::from_secs(60))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("caesar golden", caesar_golden),
        ("vigenere golden (tableau; printed example differs at index 6)", vigenere_golden_diverges_from_printed_at_index_6),
        ("playfair goldens", playfair_goldens),
        ("round trips, 1000 cases per cipher", round_trips),
        ("attack efficacy", attacks),
        ("engine properties, 500 sequences", engine_properties),
        ("service contract", service_contract),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match outcome {
            Ok(()) => println!("PASS  {name}  ({ms:.1} ms)"),
            Err(why) => {
                println!("FAIL  {name}  ({ms:.1} ms): {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
