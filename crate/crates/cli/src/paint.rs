/// Optional ANSI colouring for status markers. Off unless `--color`.
#[derive(Debug, Clone, Copy)]
pub struct Paint {
    enabled: bool,
}

impl Paint {
    pub fn new(enabled: bool) -> Self {
        Paint { enabled }
    }

    pub fn pass(self, word: &str) -> String {
        self.wrap("32", word)
    }

    pub fn fail(self, word: &str) -> String {
        self.wrap("31", word)
    }

    fn wrap(self, code: &str, word: &str) -> String {
        if self.enabled {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}
