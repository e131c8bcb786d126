//! Prompt assembly for converting raw problem/solution corpora into
//! instruction-response training pairs, plus the chat-completion client used
//! to generate the templates.
//!
//! Per input record the flow is: one instruction-template request (HTML
//! problem statement in, language-agnostic instruction with a `<language>`
//! token out), three response-template requests (one per target language),
//! then local instantiation of every solution into the templates.

mod client;

pub use client::{ChatClient, ChatError, EndpointConfig};

use crate::lang::{normalize_language, Dialect, Language, NormalizedLanguage};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Fixed system prompt, identical across all augmentation calls.
pub const SYSTEM_PROMPT: &str = "You are a helpful assistant that will assist in creating a new code-based benchmark dataset. When responding, you only provide exactly what is requested, with no additional text.";

const INSTRUCTION_PROMPT_PREFIX: &str = "I am augmenting the Project CodeNet (by IBM) dataset, converting it into an instruction / response dataset that can be used for supervised finetuning, and I need assistance.\nThe current problem statements are provided in HTML, and I need you to convert them into a natrual language prompt instruction that I can use to ask models to generate code.\nThe instruction must be programming language agnostic, but you must provide a <language> token in the instruction, that I can replace with the programming language that must be used.\nIt is vital that the requested specifications are exactly the same as the original.\nOnly provide the instruction exactly as it should be used in the dataset. Here is the original HTML problem statement:\n";

const RESPONSE_PROMPT_PREFIX: &str = "I am augmenting the Project CodeNet (by IBM) dataset, converting it into an instruction / response dataset that can be used for supervised finetuning, and I need assistance.\nThe solutions are currently provided as just raw code, and I need your help to turn them into readable and useful model responses that can be used for training.\nI need you to provide a template for a response that would read naturally to a user, you should add the surrounding text that LLMs typically provide, reading as if it is a real response from an LLM solving the task. Do not include specifics of the code, approach or algorithm though - you have not seen the code yet, so it might not be accurate.\nThe response should be language agnostic (do not use those words though), but must contain a <language> token, that I can replace with the programming language that is used.\nYou must also provide a <code> token that I will replace with the code block of the response, there is no need for a corresponding </code>.\nThe <code> token must be surrounded by newlines, but I will handle correctly having the code itself contained within triple backticks (as per markdown).\nOnly provide the response template exactly as it should be used in the dataset.\nHere is the instruction:\n";

const LANGUAGE_TOKEN: &str = "<language>";
const CODE_TOKEN: &str = "<code>";

/// A ready-to-send (system, user) message pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub system: String,
    pub user: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AugmentError {
    #[error("input text is empty")]
    EmptyInput,
    #[error("template lacks required token {token}")]
    MissingToken { token: &'static str },
    #[error("response template must have exactly one <code> token, found {found}")]
    CodeTokenCount { found: usize },
    #[error("the <code> token must be surrounded by newlines")]
    CodeTokenNotOnOwnLine,
}

/// Assemble the prompt that turns an HTML problem statement into a
/// natural-language instruction template.
pub fn build_instruction_prompt(html: &str) -> Result<PromptBundle, AugmentError> {
    if html.trim().is_empty() {
        return Err(AugmentError::EmptyInput);
    }
    Ok(PromptBundle {
        system: SYSTEM_PROMPT.to_string(),
        user: format!("{INSTRUCTION_PROMPT_PREFIX}{html}"),
    })
}

/// Assemble the prompt that turns an instruction template into a response
/// template.
pub fn build_response_prompt(instruction: &str) -> Result<PromptBundle, AugmentError> {
    if instruction.trim().is_empty() {
        return Err(AugmentError::EmptyInput);
    }
    Ok(PromptBundle {
        system: SYSTEM_PROMPT.to_string(),
        user: format!("{RESPONSE_PROMPT_PREFIX}{instruction}"),
    })
}

/// An instruction template plus the response template for one language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplatePair {
    /// Must contain at least one `<language>` token.
    pub instruction_template: String,
    /// Must contain `<language>` and exactly one `<code>` token with a
    /// newline immediately before and after it.
    pub response_template: String,
}

impl TemplatePair {
    pub fn validate(&self) -> Result<(), AugmentError> {
        if !self.instruction_template.contains(LANGUAGE_TOKEN) {
            return Err(AugmentError::MissingToken {
                token: LANGUAGE_TOKEN,
            });
        }
        if !self.response_template.contains(LANGUAGE_TOKEN) {
            return Err(AugmentError::MissingToken {
                token: LANGUAGE_TOKEN,
            });
        }
        let found = self.response_template.matches(CODE_TOKEN).count();
        if found == 0 {
            return Err(AugmentError::MissingToken { token: CODE_TOKEN });
        }
        if found > 1 {
            return Err(AugmentError::CodeTokenCount { found });
        }
        let at = self
            .response_template
            .find(CODE_TOKEN)
            .expect("found above");
        let before_ok = self.response_template[..at].ends_with('\n');
        let after_ok = self.response_template[at + CODE_TOKEN.len()..].starts_with('\n');
        if !(before_ok && after_ok) {
            return Err(AugmentError::CodeTokenNotOnOwnLine);
        }
        Ok(())
    }
}

/// Display name substituted for `<language>`.
pub fn display_name(language: Language, dialect: Option<Dialect>) -> &'static str {
    match (language, dialect) {
        (Language::Python, _) => "Python",
        (Language::Javascript, None) => "JavaScript",
        (Language::Javascript, Some(Dialect::Typescript)) => "TypeScript",
        (Language::Java, _) => "Java",
    }
}

/// Fence long enough that the embedded code can never close it early: one
/// backtick more than the longest backtick run in the code, minimum three.
fn fence_for(code: &str) -> String {
    let mut longest = 0usize;
    let mut run = 0usize;
    for c in code.chars() {
        if c == '`' {
            run += 1;
            longest = longest.max(run);
        } else {
            run = 0;
        }
    }
    "`".repeat((longest + 1).max(3))
}

/// Substitute a concrete language and solution into a template pair.
///
/// Every `<language>` becomes the display name; `<code>` becomes a fenced
/// block tagged with the lowercase language name, the code verbatim inside.
/// The template text outside token positions is byte-preserved.
pub fn instantiate(
    pair: &TemplatePair,
    language_name: &str,
    code: &str,
) -> Result<(String, String), AugmentError> {
    pair.validate()?;
    let instruction = pair
        .instruction_template
        .replace(LANGUAGE_TOKEN, language_name);
    let fence = fence_for(code);
    let block = format!("{fence}{}\n{code}\n{fence}", language_name.to_lowercase());
    let response = pair
        .response_template
        .replace(LANGUAGE_TOKEN, language_name)
        .replacen(CODE_TOKEN, &block, 1);
    Ok((instruction, response))
}

/// One raw record of a solution-driven corpus awaiting augmentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AugmentInput {
    pub id: String,
    /// HTML problem statement.
    pub html: String,
    pub solutions: Vec<SolutionInput>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionInput {
    pub id: String,
    /// Raw language tag; normalised with the same table as fenced blocks.
    pub language: String,
    pub code: String,
}

/// One fully instantiated training pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedPair {
    pub record_id: String,
    pub solution_id: String,
    pub language: Language,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dialect: Option<Dialect>,
    pub instruction: String,
    pub response: String,
}

/// A prompt bundle tagged with its position in the augmentation flow;
/// `--dry-run` emits these instead of calling the endpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleRow {
    pub record_id: String,
    pub kind: BundleKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub language: Option<Language>,
    pub system: String,
    pub user: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleKind {
    Instruction,
    Response,
}

/// The four bundles one record produces: one instruction-template request
/// plus one response-template request per target language. Under dry-run the
/// response prompts quote the instruction template placeholder, since no
/// template has been generated yet.
pub fn dry_run_bundles(input: &AugmentInput) -> Result<Vec<BundleRow>, AugmentError> {
    let mut rows = Vec::with_capacity(4);
    let instruction = build_instruction_prompt(&input.html)?;
    rows.push(BundleRow {
        record_id: input.id.clone(),
        kind: BundleKind::Instruction,
        language: None,
        system: instruction.system.clone(),
        user: instruction.user.clone(),
    });
    let placeholder = "<instruction>";
    let response = build_response_prompt(placeholder)?;
    for language in Language::ALL {
        rows.push(BundleRow {
            record_id: input.id.clone(),
            kind: BundleKind::Response,
            language: Some(language),
            system: response.system.clone(),
            user: response.user.clone(),
        });
    }
    Ok(rows)
}

/// Augment one record end to end against the configured endpoint.
pub fn augment_record(
    client: &ChatClient,
    input: &AugmentInput,
) -> Result<Vec<AugmentedPair>, RecordError> {
    let instruction_prompt = build_instruction_prompt(&input.html)?;
    let instruction_template = client.complete(&instruction_prompt)?;
    let response_prompt = build_response_prompt(&instruction_template)?;
    let mut response_templates = std::collections::BTreeMap::new();
    for language in Language::ALL {
        let template = client.complete(&response_prompt)?;
        response_templates.insert(language, template);
    }
    let mut pairs = Vec::new();
    for solution in &input.solutions {
        let NormalizedLanguage::Supported { language, dialect } =
            normalize_language(&solution.language)
        else {
            return Err(RecordError::UnsupportedLanguage {
                solution_id: solution.id.clone(),
                tag: solution.language.clone(),
            });
        };
        let pair = TemplatePair {
            instruction_template: instruction_template.clone(),
            response_template: response_templates[&language].clone(),
        };
        let (instruction, response) =
            instantiate(&pair, display_name(language, dialect), &solution.code)?;
        pairs.push(AugmentedPair {
            record_id: input.id.clone(),
            solution_id: solution.id.clone(),
            language,
            dialect,
            instruction,
            response,
        });
    }
    Ok(pairs)
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error(transparent)]
    Prompt(#[from] AugmentError),
    #[error(transparent)]
    Chat(#[from] ChatError),
    #[error("solution {solution_id}: unsupported language tag {tag:?}")]
    UnsupportedLanguage { solution_id: String, tag: String },
}

/// Augment many records with bounded concurrency. Failed records are
/// collected, not fatal; results come back ordered by record id regardless
/// of completion order.
pub fn augment_all(
    client: &ChatClient,
    inputs: &[AugmentInput],
    concurrency: usize,
) -> (Vec<AugmentedPair>, Vec<(String, String)>) {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    let next = AtomicUsize::new(0);
    let pairs = Mutex::new(Vec::new());
    let failures = Mutex::new(Vec::new());
    let workers = concurrency.max(1).min(inputs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                let Some(input) = inputs.get(idx) else { break };
                match augment_record(client, input) {
                    Ok(mut out) => pairs.lock().unwrap().append(&mut out),
                    Err(err) => failures
                        .lock()
                        .unwrap()
                        .push((input.id.clone(), err.to_string())),
                }
            });
        }
    });
    let mut pairs = pairs.into_inner().unwrap();
    pairs.sort_by(|a, b| {
        (a.record_id.as_str(), a.solution_id.as_str())
            .cmp(&(b.record_id.as_str(), b.solution_id.as_str()))
    });
    let mut failures = failures.into_inner().unwrap();
    failures.sort();
    (pairs, failures)
}
