//! JSON-over-HTTP chat-completion client with bounded retries.
//!
//! The request carries a model id and a two-message conversation; the
//! assistant text comes back from `choices[0].message.content`. Transient
//! failures (429, 5xx, 408, timeouts, transport errors) are retried with
//! jittered exponential backoff; auth failures and other client errors are
//! not. The credential is read from an environment variable before any
//! network activity.

use super::PromptBundle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Mutex;
use std::time::Duration;
use thiserror::Error;

/// Endpoint configuration; everything but the credential value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointConfig {
    /// Full URL of the chat-completions route.
    pub url: String,
    pub model: String,
    /// Name of the environment variable holding the API key.
    #[serde(default = "default_api_key_env")]
    pub api_key_env: String,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: u64,
    /// Total attempts per request, first try included.
    #[serde(default = "default_max_attempts")]
    pub max_attempts: u32,
    #[serde(default = "default_backoff_base_ms")]
    pub backoff_base_ms: u64,
    /// Bounded concurrent in-flight requests during batch augmentation.
    #[serde(default = "default_concurrency")]
    pub concurrency: usize,
}

fn default_api_key_env() -> String {
    "CHAT_API_KEY".to_string()
}
fn default_timeout_secs() -> u64 {
    60
}
fn default_max_attempts() -> u32 {
    5
}
fn default_backoff_base_ms() -> u64 {
    1000
}
fn default_concurrency() -> usize {
    4
}

impl EndpointConfig {
    pub fn new(url: impl Into<String>, model: impl Into<String>) -> Self {
        EndpointConfig {
            url: url.into(),
            model: model.into(),
            api_key_env: default_api_key_env(),
            timeout_secs: default_timeout_secs(),
            max_attempts: default_max_attempts(),
            backoff_base_ms: default_backoff_base_ms(),
            concurrency: default_concurrency(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ChatError {
    #[error("no credential: environment variable {var} is unset or empty")]
    Auth { var: String },
    #[error("rate limited after {attempts} attempts")]
    RateLimited { attempts: u32 },
    #[error("request timed out after {attempts} attempts")]
    Timeout { attempts: u32 },
    #[error("endpoint returned malformed response: {0}")]
    MalformedResponse(String),
    #[error("endpoint returned HTTP {status}: {body}")]
    HttpStatus { status: u16, body: String },
    #[error("transport failure after {attempts} attempts: {message}")]
    Transport { attempts: u32, message: String },
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: [ChatMessage<'a>; 2],
}

#[derive(Serialize)]
struct ChatMessage<'a> {
    role: &'static str,
    content: &'a str,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: AssistantMessage,
}

#[derive(Deserialize)]
struct AssistantMessage {
    content: String,
}

pub struct ChatClient {
    agent: ureq::Agent,
    config: EndpointConfig,
    api_key: String,
    jitter: Mutex<ChaCha8Rng>,
}

impl ChatClient {
    /// Build a client, resolving the credential immediately so a missing key
    /// fails before any network call.
    pub fn new(config: EndpointConfig, seed: u64) -> Result<Self, ChatError> {
        let api_key = std::env::var(&config.api_key_env)
            .ok()
            .filter(|v| !v.trim().is_empty())
            .ok_or_else(|| ChatError::Auth {
                var: config.api_key_env.clone(),
            })?;
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(Duration::from_secs(config.timeout_secs)))
            .build()
            .into();
        Ok(ChatClient {
            agent,
            config,
            api_key,
            jitter: Mutex::new(ChaCha8Rng::seed_from_u64(seed)),
        })
    }

    /// Send one bundle and return the assistant text.
    pub fn complete(&self, bundle: &PromptBundle) -> Result<String, ChatError> {
        let request = ChatRequest {
            model: &self.config.model,
            messages: [
                ChatMessage {
                    role: "system",
                    content: &bundle.system,
                },
                ChatMessage {
                    role: "user",
                    content: &bundle.user,
                },
            ],
        };
        let max_attempts = self.config.max_attempts.max(1);
        let mut attempt = 0u32;
        loop {
            attempt += 1;
            let sent = self
                .agent
                .post(&self.config.url)
                .header("Authorization", &format!("Bearer {}", self.api_key))
                .send_json(&request);
            match sent {
                Ok(mut response) => {
                    let status = response.status().as_u16();
                    if (200..300).contains(&status) {
                        let parsed: ChatResponse = response
                            .body_mut()
                            .read_json()
                            .map_err(|e| ChatError::MalformedResponse(e.to_string()))?;
                        let content = parsed
                            .choices
                            .into_iter()
                            .next()
                            .map(|c| c.message.content)
                            .ok_or_else(|| {
                                ChatError::MalformedResponse("choices array is empty".into())
                            })?;
                        return Ok(content);
                    }
                    let body = response
                        .body_mut()
                        .read_to_string()
                        .unwrap_or_else(|_| String::from("<unreadable body>"));
                    match status {
                        401 | 403 => {
                            return Err(ChatError::Auth {
                                var: self.config.api_key_env.clone(),
                            })
                        }
                        429 => {
                            if attempt >= max_attempts {
                                return Err(ChatError::RateLimited { attempts: attempt });
                            }
                        }
                        408 | 500..=599 => {
                            if attempt >= max_attempts {
                                return Err(ChatError::HttpStatus { status, body });
                            }
                        }
                        _ => return Err(ChatError::HttpStatus { status, body }),
                    }
                }
                Err(ureq::Error::Timeout(_)) => {
                    if attempt >= max_attempts {
                        return Err(ChatError::Timeout { attempts: attempt });
                    }
                }
                Err(other) => {
                    if attempt >= max_attempts {
                        return Err(ChatError::Transport {
                            attempts: attempt,
                            message: other.to_string(),
                        });
                    }
                }
            }
            std::thread::sleep(self.backoff(attempt));
        }
    }

    /// Exponential backoff from the configured base, jittered to 50-150%.
    fn backoff(&self, attempt: u32) -> Duration {
        let exp = self
            .config
            .backoff_base_ms
            .saturating_mul(1u64 << (attempt - 1).min(16));
        let factor = self.jitter.lock().unwrap().random_range(0.5..1.5);
        Duration::from_millis((exp as f64 * factor) as u64)
    }

    pub fn config(&self) -> &EndpointConfig {
        &self.config
    }
}
