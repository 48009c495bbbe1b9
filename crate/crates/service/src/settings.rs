use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LetterSpacing {
    Normal,
    #[default]
    Wide,
    Wider,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineHeight {
    Normal,
    #[default]
    Relaxed,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theme {
    #[default]
    Light,
    Dark,
    HighContrast,
}

/// Presentation preferences for one player. Everything defaults to the
/// reading-friendly choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerSettings {
    pub dyslexia_font: bool,
    pub letter_spacing: LetterSpacing,
    pub line_height: LineHeight,
    pub theme: Theme,
    pub tts_enabled: bool,
}

impl Default for PlayerSettings {
    fn default() -> Self {
        PlayerSettings {
            dyslexia_font: true,
            letter_spacing: LetterSpacing::Wide,
            line_height: LineHeight::Relaxed,
            theme: Theme::Light,
            tts_enabled: true,
        }
    }
}
