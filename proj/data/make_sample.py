#!/usr/bin/env python3
"""Builds data/sample.txt from the public-domain texts in data/raw/.

Output is one sentence per line, lowercased, punctuation split into
separate tokens. Run from the repository root:

    python3 data/make_sample.py
"""
import pathlib
import re

ROOT = pathlib.Path(__file__).resolve().parent
RAW = ROOT / "raw"


def body(path, start_marker=None, end_marker=None):
    text = path.read_text(encoding="utf-8-sig")
    if start_marker:
        text = text.split(start_marker, 1)[1]
        text = text.split("\n", 1)[1]
    if end_marker:
        text = text.split(end_marker, 1)[0]
    return text


def paragraphs(text):
    for para in re.split(r"\n\s*\n", text):
        para = " ".join(para.split())
        if para:
            yield para


SENT_END = re.compile(
    r"(?<!\bMr\.)(?<!\bMrs\.)(?<!\bDr\.)(?<!\bSt\.)(?<!\b[A-Z]\.)"
    r"(?<=[.!?])[\"')\]]*\s+(?=[\"'(\[]*[A-Z])")
TOKEN = re.compile(r"[a-z0-9]+(?:['’][a-z]+)*|[^\sa-z0-9]")


def sentences(text):
    for para in paragraphs(text):
        for sent in SENT_END.split(para):
            toks = TOKEN.findall(sent.lower().replace("_", ""))
            if len(toks) >= 2:
                yield " ".join(toks)


def main():
    out = []
    out += sentences(body(RAW / "botchan.txt",
                          "*** START OF THIS PROJECT GUTENBERG EBOOK",
                          "*** END OF THIS PROJECT GUTENBERG EBOOK"))
    out += sentences(body(RAW / "alice.txt",
                          "*** START OF THIS PROJECT GUTENBERG EBOOK",
                          "End of Project Gutenberg's Alice"))
    out += sentences(body(RAW / "constitution.txt"))
    (ROOT / "sample.txt").write_text("\n".join(out) + "\n", encoding="utf-8")
    words = sum(len(s.split()) for s in out)
    print(f"{len(out)} sentences, {words} tokens")


if __name__ == "__main__":
    main()
