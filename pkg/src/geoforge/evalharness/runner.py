"""Model runner: one greedy generation per problem over a chat endpoint.

Speaks the common chat-completions JSON shape (``POST {base}/chat/completions``)
with a pluggable base URL and auth header, so it can be pointed at a local
stub in tests.  Completed problem ids are appended to a ledger file after
each response, making interrupted runs resumable.
"""
from __future__ import annotations

import base64
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import requests

from ..errors import EndpointError, MissingImage
from .answers import PredictionRecord
from .prompts import build_prompt

MAX_OUTPUT_TOKENS = 16384
TEMPERATURE = 0.0


@dataclass
class EndpointConfig:
    base_url: str
    model: str
    api_key: str = ""
    auth_header: str = "Authorization"
    auth_prefix: str = "Bearer "
    timeout_s: float = 120.0
    max_retries: int = 3
    backoff_s: float = 2.0
    max_backoff_s: float = 30.0


def _messages(prompt: str, image_path: str | None):
    if image_path is None:
        return [{"role": "user", "content": prompt}]
    with open(image_path, "rb") as fh:
        data = base64.b64encode(fh.read()).decode("ascii")
    suffix = os.path.splitext(image_path)[1].lstrip(".") or "svg+xml"
    if suffix == "svg":
        suffix = "svg+xml"
    return [{
        "role": "user",
        "content": [
            {"type": "text", "text": prompt},
            {"type": "image_url",
             "image_url": {"url": f"data:image/{suffix};base64,{data}"}},
        ],
    }]


def _request(config: EndpointConfig, payload: dict) -> dict:
    headers = {"Content-Type": "application/json"}
    if config.api_key:
        headers[config.auth_header] = config.auth_prefix + config.api_key
    url = config.base_url.rstrip("/") + "/chat/completions"
    delay = config.backoff_s
    last = None
    for _ in range(config.max_retries):
        try:
            resp = requests.post(url, json=payload, headers=headers,
                                 timeout=config.timeout_s)
            if resp.status_code == 200:
                return resp.json()
            last = f"HTTP {resp.status_code}: {resp.text[:200]}"
        except requests.RequestException as exc:
            last = str(exc)
        time.sleep(delay)
        delay = min(delay * 2, config.max_backoff_s)
    raise EndpointError(last or "request failed")


def query_one(config: EndpointConfig, record, prompt_lang: str,
              modality: str, figure_dir: str | None) -> PredictionRecord:
    statement = record.statement_en if prompt_lang == "en" else record.statement_zh
    options = [getattr(o, f"text_{prompt_lang}") for o in record.options]
    prompt = build_prompt(statement, options, prompt_lang)
    image = None
    if modality == "text_image":
        image = os.path.join(figure_dir or "", record.figure_path)
        if not record.figure_path or not os.path.exists(image):
            raise MissingImage(record.id)
    payload = {
        "model": config.model,
        "messages": _messages(prompt, image),
        "temperature": TEMPERATURE,
        "max_tokens": MAX_OUTPUT_TOKENS,
        "n": 1,
    }
    t0 = time.time()
    try:
        data = _request(config, payload)
        choice = data["choices"][0]
        text = choice["message"]["content"] or ""
        truncated = choice.get("finish_reason") == "length"
        usage = data.get("usage", {})
        return PredictionRecord(
            problem_id=record.id, raw_text=text, truncated=truncated,
            latency_s=time.time() - t0,
            prompt_tokens=usage.get("prompt_tokens"),
            completion_tokens=usage.get("completion_tokens"))
    except EndpointError:
        return PredictionRecord(problem_id=record.id, raw_text="",
                                truncated=False, latency_s=time.time() - t0)


def run_model(config: EndpointConfig, corpus, prompt_lang: str = "en",
              modality: str = "text_only", figure_dir: str | None = None,
              ledger_path: str | None = None, jobs: int = 1
              ) -> list[PredictionRecord]:
    """One request per problem; resumable through the completed-id ledger."""
    if modality not in ("text_only", "text_image"):
        raise ValueError("modality is text_only or text_image")
    done: dict[str, PredictionRecord] = {}
    if ledger_path and os.path.exists(ledger_path):
        with open(ledger_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    obj = json.loads(line)
                    done[obj["problem_id"]] = PredictionRecord(
                        problem_id=obj["problem_id"], raw_text=obj.get("raw_text", ""),
                        truncated=obj.get("truncated", False))
    todo = [rec for rec in corpus if rec.id not in done]

    def work(rec):
        return query_one(config, rec, prompt_lang, modality, figure_dir)

    results: dict[str, PredictionRecord] = dict(done)
    ledger = open(ledger_path, "a", encoding="utf-8") if ledger_path else None
    try:
        if jobs <= 1:
            fresh = map(work, todo)
        else:
            pool = ThreadPoolExecutor(max_workers=jobs)
            fresh = pool.map(work, todo)
        for pred in fresh:
            results[pred.problem_id] = pred
            if ledger:
                ledger.write(json.dumps(
                    {"problem_id": pred.problem_id, "raw_text": pred.raw_text,
                     "truncated": pred.truncated}, ensure_ascii=False) + "\n")
                ledger.flush()
        if jobs > 1:
            pool.shutdown()
    finally:
        if ledger:
            ledger.close()
    return [results[rec.id] for rec in corpus if rec.id in results]
