use std::fmt;

/// A problem with the input: unparseable text, a dangling reference, a
/// signature mismatch or invalid data where valid data is required. Maps to
/// exit status 2.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct InputError {
    pub line: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> Self {
        Self { line: None, message: message.into() }
    }

    /// `line` 0 means "not from a file" and is dropped.
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line: (line > 0).then_some(line), message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl From<ghocolim_core::Error> for InputError {
    fn from(e: ghocolim_core::Error) -> Self {
        Self::new(e.to_string())
    }
}
