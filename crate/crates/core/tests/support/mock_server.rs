//! Minimal scripted HTTP/1.1 server for exercising the chat client without
//! a network.

#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

/// One scripted reply.
#[derive(Debug, Clone)]
pub enum Reply {
    /// Respond with this status and body.
    Status(u16, String),
    /// Echo the request's user-message content back as the assistant text.
    EchoUser,
    /// Accept the connection, then stall long enough to trip the client
    /// timeout.
    Stall(u64),
}

pub struct MockServer {
    pub url: String,
    requests: Arc<Mutex<Vec<serde_json::Value>>>,
    handle: Option<JoinHandle<()>>,
}

impl MockServer {
    /// Serve the scripted replies in order, one connection each.
    pub fn start(script: Vec<Reply>) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind mock server");
        let addr = listener.local_addr().unwrap();
        let requests: Arc<Mutex<Vec<serde_json::Value>>> = Arc::new(Mutex::new(Vec::new()));
        let seen = Arc::clone(&requests);
        let handle = std::thread::spawn(move || {
            for reply in script {
                let Ok((mut stream, _)) = listener.accept() else {
                    return;
                };
                let body = read_request(&mut stream);
                if let Ok(parsed) = serde_json::from_slice(&body) {
                    seen.lock().unwrap().push(parsed);
                }
                match &reply {
                    Reply::Stall(millis) => {
                        std::thread::sleep(std::time::Duration::from_millis(*millis));
                    }
                    Reply::Status(status, payload) => {
                        write_response(&mut stream, *status, payload);
                    }
                    Reply::EchoUser => {
                        let user = serde_json::from_slice::<serde_json::Value>(&body)
                            .ok()
                            .and_then(|v| v["messages"][1]["content"].as_str().map(str::to_string))
                            .unwrap_or_default();
                        let payload = serde_json::json!({
                            "choices": [{"message": {"role": "assistant", "content": user}}]
                        });
                        write_response(&mut stream, 200, &payload.to_string());
                    }
                }
            }
        });
        MockServer {
            url: format!("http://{addr}/v1/chat/completions"),
            requests,
            handle: Some(handle),
        }
    }

    pub fn chat_ok(content: &str) -> String {
        serde_json::json!({
            "choices": [{"message": {"role": "assistant", "content": content}}]
        })
        .to_string()
    }

    pub fn requests_seen(&self) -> usize {
        self.requests.lock().unwrap().len()
    }

    pub fn request(&self, idx: usize) -> serde_json::Value {
        self.requests.lock().unwrap()[idx].clone()
    }

    pub fn join(mut self) {
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

fn read_request(stream: &mut std::net::TcpStream) -> Vec<u8> {
    let mut reader = BufReader::new(stream.try_clone().expect("clone stream"));
    let mut line = String::new();
    let _ = reader.read_line(&mut line);
    let mut content_len = 0usize;
    loop {
        let mut header = String::new();
        if reader.read_line(&mut header).is_err() || header.trim().is_empty() {
            break;
        }
        let lower = header.to_ascii_lowercase();
        if let Some(v) = lower.strip_prefix("content-length:") {
            content_len = v.trim().parse().unwrap_or(0);
        }
    }
    let mut body = vec![0u8; content_len];
    let _ = reader.read_exact(&mut body);
    body
}

fn write_response(stream: &mut std::net::TcpStream, status: u16, body: &str) {
    let reason = match status {
        200 => "OK",
        401 => "Unauthorized",
        408 => "Request Timeout",
        429 => "Too Many Requests",
        500 => "Internal Server Error",
        503 => "Service Unavailable",
        _ => "Mock",
    };
    let response = format!(
        "HTTP/1.1 {status} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    let _ = stream.write_all(response.as_bytes());
}
