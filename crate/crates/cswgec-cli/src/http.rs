//! Chat-completion client over HTTP. The API key is read from an environment
//! variable at request time, so a fully replayed run never needs one.

use std::time::Duration;

use cswgec_core::generate::{ChatClient, ClientError};

pub struct HttpChatClient {
    endpoint: String,
    model: String,
    key_env: String,
    client: reqwest::blocking::Client,
}

impl HttpChatClient {
    pub fn new(endpoint: String, model: String, key_env: String) -> HttpChatClient {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(120))
            .build()
            .expect("TLS backend is compiled in");
        HttpChatClient { endpoint, model, key_env, client }
    }
}

fn transport(e: reqwest::Error) -> ClientError {
    ClientError { message: e.to_string(), retryable: true }
}

impl ChatClient for HttpChatClient {
    fn complete(&mut self, prompt: &str) -> Result<String, ClientError> {
        let key = std::env::var(&self.key_env).map_err(|_| ClientError {
            message: format!("environment variable {} holds no API key", self.key_env),
            retryable: false,
        })?;
        let body = serde_json::json!({
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
        });
        let response = self
            .client
            .post(&self.endpoint)
            .bearer_auth(key.trim())
            .json(&body)
            .send()
            .map_err(transport)?;
        let status = response.status();
        let text = response.text().map_err(transport)?;
        if !status.is_success() {
            let code = status.as_u16();
            let snippet: String = text.chars().take(200).collect();
            return Err(ClientError {
                message: format!("HTTP {code}: {snippet}"),
                retryable: code == 408 || code == 429 || status.is_server_error(),
            });
        }
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| ClientError {
            message: format!("unparseable response body: {e}"),
            retryable: false,
        })?;
        value["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| ClientError {
                message: "response carries no message content".to_string(),
                retryable: false,
            })
    }
}
