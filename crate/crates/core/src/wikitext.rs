//! Best-effort MediaWiki markup parsing.
//!
//! The parser never fails. It recognizes a small, fixed grammar:
//!
//! - internal links `[[target]]` / `[[target|label]]`
//! - images: links in the `File:` or `Image:` namespace
//! - categories: `[[Category:NAME]]` / `[[Category:NAME|sort key]]`
//! - references: `<ref ...>...</ref>` and `<ref ... />`
//! - headings: a line fenced by 2 to 6 `=` characters
//! - templates `{{...}}`; the first one named `Infobox ...` is the infobox
//! - bracketed external links `[http://url label]`
//!
//! Structural elements are collected everywhere (inside templates, references
//! and image captions too), but only prose ends up in `plain_text`. An opener
//! with no matching closer is dropped and the rest of the input is parsed as
//! usual.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::RawArticle;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralElements {
    pub internal_links: Vec<String>,
    pub external_links: Vec<String>,
    pub headings: Vec<String>,
    pub references: usize,
    pub images: usize,
    /// Text between the outer braces of the first infobox template.
    pub infobox_raw: Option<String>,
    pub category_strings: Vec<String>,
    pub plain_text: String,
}

impl StructuralElements {
    /// True when nothing but plain text was found.
    pub fn is_structureless(&self) -> bool {
        self.internal_links.is_empty()
            && self.external_links.is_empty()
            && self.headings.is_empty()
            && self.references == 0
            && self.images == 0
            && self.infobox_raw.is_none()
            && self.category_strings.is_empty()
    }
}

/// Tags whose content is not prose.
const OPAQUE_TAGS: &[&str] = &[
    "math",
    "chem",
    "ce",
    "score",
    "timeline",
    "graph",
    "syntaxhighlight",
    "source",
    "templatedata",
    "gallery",
    "imagemap",
];

pub fn parse_article(raw: &RawArticle) -> StructuralElements {
    parse_wikitext(&raw.wikitext)
}

pub fn parse_wikitext(wikitext: &str) -> StructuralElements {
    let mut elems = StructuralElements::default();
    let mut text = String::new();
    Scanner {
        elems: &mut elems,
        infobox_seen: false,
    }
    .scan(wikitext, &mut text, true);
    elems.plain_text = stabilize(normalize_whitespace(&text));
    elems
}

/// Re-strips until nothing changes. Removing one construct can glue two
/// fragments into new markup (`[<!-- -->[x]]`); every pass only deletes
/// characters, so this terminates.
fn stabilize(mut text: String) -> String {
    loop {
        let mut scratch = StructuralElements::default();
        let mut out = String::new();
        Scanner {
            elems: &mut scratch,
            infobox_seen: true,
        }
        .scan(&text, &mut out, true);
        let next = normalize_whitespace(&out);
        if next == text {
            return text;
        }
        text = next;
    }
}

/// Collapses runs of whitespace within lines, trims lines and drops empty ones.
fn normalize_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.split('\n') {
        let mut first = true;
        for word in line.split_whitespace() {
            if first {
                if !out.is_empty() {
                    out.push('\n');
                }
                first = false;
            } else {
                out.push(' ');
            }
            out.push_str(word);
        }
    }
    out
}

struct Scanner<'e> {
    elems: &'e mut StructuralElements,
    infobox_seen: bool,
}

impl Scanner<'_> {
    /// Scans `src`, appending prose to `out` when `keep` is set.
    fn scan(&mut self, src: &str, out: &mut String, keep: bool) {
        let mut sink = String::new();
        let out = if keep { out } else { &mut sink };
        let bytes = src.as_bytes();
        let mut i = 0;
        let mut line_start = true;
        let mut table_row = false;

        while i < src.len() {
            let rest = &src[i..];

            if line_start {
                line_start = false;
                let line_end = rest.find('\n').map_or(src.len(), |p| i + p);
                let line = &src[i..line_end];
                if let Some(inner) = heading_inner(line) {
                    let mut heading = String::new();
                    self.scan(inner, &mut heading, true);
                    let heading = heading.split_whitespace().collect::<Vec<_>>().join(" ");
                    out.push_str(&heading);
                    self.elems.headings.push(heading);
                    i = line_end;
                    continue;
                }
                let trimmed = line.trim_start();
                let indent = line.len() - trimmed.len();
                if trimmed.starts_with("{|") || trimmed.starts_with("|}") || trimmed.starts_with("|-") {
                    // table attributes are not prose
                    self.scan(&trimmed[2..], &mut String::new(), false);
                    i = line_end;
                    continue;
                }
                if trimmed.starts_with("|+") {
                    i += indent + 2;
                    table_row = true;
                    continue;
                }
                if trimmed.starts_with('|') || trimmed.starts_with('!') {
                    i += indent + 1;
                    table_row = true;
                    continue;
                }
                let markers = rest
                    .bytes()
                    .take_while(|b| matches!(b, b'*' | b'#' | b':' | b';'))
                    .count();
                i += markers;
                continue;
            }

            match bytes[i] {
                b'\n' => {
                    out.push('\n');
                    i += 1;
                    line_start = true;
                    table_row = false;
                    continue;
                }
                b'|' | b'!' if table_row && (rest.starts_with("||") || rest.starts_with("!!")) => {
                    out.push(' ');
                    i += 2;
                    continue;
                }
                b'<' if rest.starts_with("<!--") => {
                    i += match rest[4..].find("-->") {
                        Some(p) => 4 + p + 3,
                        None => 4,
                    };
                    continue;
                }
                b'<' => {
                    if let Some(used) = self.tag(src, i) {
                        i += used;
                        continue;
                    }
                }
                b'{' if rest.starts_with("{{") => {
                    i += self.template(src, i);
                    continue;
                }
                b'[' if rest.starts_with("[[") && !rest.starts_with("[[[") => {
                    i += self.internal_link(src, i, out);
                    continue;
                }
                b'[' => {
                    if let Some(used) = self.external_link(src, i, out) {
                        i += used;
                        continue;
                    }
                }
                b'\'' if rest.starts_with("''") => {
                    i += rest.bytes().take_while(|&b| b == b'\'').count();
                    continue;
                }
                b'_' if rest.starts_with("__") => {
                    if let Some(len) = magic_word_len(rest) {
                        i += len;
                        continue;
                    }
                }
                _ => {}
            }

            let ch = rest.chars().next().expect("non-empty");
            out.push(ch);
            i += ch.len_utf8();
        }
    }

    /// Handles `<` at `start`; returns bytes consumed, or `None` when the
    /// `<` is ordinary text.
    fn tag(&mut self, src: &str, start: usize) -> Option<usize> {
        let Some(tag) = parse_tag(&src[start..]) else {
            // a tag-like opener that never closes loses its "<"
            return tag_like(&src[start..]).then_some(1);
        };
        Some(self.element(src, start, tag))
    }

    fn element(&mut self, src: &str, start: usize, tag: Tag) -> usize {
        let after = start + tag.len;
        if tag.closing {
            return tag.len;
        }

        if tag.name == "ref" {
            if tag.self_closing {
                self.elems.references += 1;
                return tag.len;
            }
            return match find_closing(src, after, "ref") {
                Some((content_end, close_end)) => {
                    self.elems.references += 1;
                    self.scan(&src[after..content_end], &mut String::new(), false);
                    close_end - start
                }
                None => tag.len,
            };
        }

        if tag.self_closing {
            return tag.len;
        }

        if tag.name == "references" {
            // list-defined references live inside <references>...</references>
            return match find_closing(src, after, "references") {
                Some((content_end, close_end)) => {
                    self.scan(&src[after..content_end], &mut String::new(), false);
                    close_end - start
                }
                None => tag.len,
            };
        }

        if OPAQUE_TAGS.contains(&tag.name.as_str()) {
            return match find_closing(src, after, &tag.name) {
                Some((content_end, close_end)) => {
                    if tag.name == "gallery" {
                        self.elems.images += src[after..content_end]
                            .lines()
                            .filter(|l| {
                                let l = l.trim_start().to_ascii_lowercase();
                                l.starts_with("file:") || l.starts_with("image:")
                            })
                            .count();
                    }
                    close_end - start
                }
                None => tag.len,
            };
        }

        tag.len
    }

    fn template(&mut self, src: &str, start: usize) -> usize {
        let Some(end) = match_pairs(src, start, "{{", "}}") else {
            return 2;
        };
        let inner = &src[start + 2..end - 2];
        if !self.infobox_seen && is_infobox(inner) {
            self.infobox_seen = true;
            self.elems.infobox_raw = Some(inner.to_string());
        }
        self.scan(inner, &mut String::new(), false);
        end - start
    }

    fn internal_link(&mut self, src: &str, start: usize, out: &mut String) -> usize {
        let Some(end) = match_pairs(src, start, "[[", "]]") else {
            return 2;
        };
        let inner = &src[start + 2..end - 2];
        let (target, label) = match inner.find('|') {
            Some(p) => (&inner[..p], Some(&inner[p + 1..])),
            None => (inner, None),
        };
        let target = target.trim();
        let (leading_colon, target) = match target.strip_prefix(':') {
            Some(t) => (true, t.trim_start()),
            None => (false, target),
        };

        if !leading_colon {
            match namespace(target).as_deref() {
                Some("file") | Some("image") => {
                    self.elems.images += 1;
                    if let Some(caption) = label {
                        self.scan(caption, &mut String::new(), false);
                    }
                    return end - start;
                }
                Some("category") => {
                    let name = target.split_once(':').map_or("", |(_, n)| n).trim();
                    self.elems.category_strings.push(name.to_string());
                    return end - start;
                }
                _ => {}
            }
        }

        if !target.is_empty() {
            self.elems.internal_links.push(target.to_string());
        }
        match label {
            Some(label) if !label.trim().is_empty() => self.scan(label, out, true),
            _ => self.scan(target, out, true),
        }
        end - start
    }

    fn external_link(&mut self, src: &str, start: usize, out: &mut String) -> Option<usize> {
        let rest = &src[start + 1..];
        let lower: String = rest.chars().take(8).collect::<String>().to_ascii_lowercase();
        if !["http://", "https://", "ftp://", "//"]
            .iter()
            .any(|s| lower.starts_with(s))
        {
            return None;
        }
        let line = rest.split('\n').next().unwrap_or("");
        let close = line.find(']')?;
        if line[..close].contains('[') {
            return None;
        }
        let body = &line[..close];
        let (url, label) = match body.find(char::is_whitespace) {
            Some(p) => (&body[..p], body[p..].trim()),
            None => (body, ""),
        };
        self.elems.external_links.push(url.to_string());
        if !label.is_empty() {
            self.scan(label, out, true);
        }
        Some(close + 2)
    }
}

struct Tag {
    name: String,
    len: usize,
    closing: bool,
    self_closing: bool,
}

/// `<name ...>` or `</name>` on a single line.
fn parse_tag(s: &str) -> Option<Tag> {
    let b = s.as_bytes();
    let mut p = 1;
    let closing = b.get(p) == Some(&b'/');
    if closing {
        p += 1;
    }
    if !b.get(p)?.is_ascii_alphabetic() {
        return None;
    }
    let name_start = p;
    while p < b.len() && b[p].is_ascii_alphanumeric() {
        p += 1;
    }
    let name = s[name_start..p].to_ascii_lowercase();
    match b.get(p) {
        Some(b'>') | Some(b'/') => {}
        Some(c) if c.is_ascii_whitespace() => {}
        _ => return None,
    }
    let rest = &s[p..];
    let gt = rest.find(['>', '<', '\n'])?;
    if rest.as_bytes()[gt] != b'>' {
        return None;
    }
    let self_closing = rest[..gt].trim_end().ends_with('/');
    Some(Tag {
        name,
        len: p + gt + 1,
        closing,
        self_closing,
    })
}

/// An opener such as `<ref` that never closes with `>`.
fn tag_like(s: &str) -> bool {
    let b = s.as_bytes();
    let p = if b.get(1) == Some(&b'/') { 2 } else { 1 };
    b.get(p).is_some_and(u8::is_ascii_alphabetic)
}

/// Finds `</name ...>` after `from`; returns (content end, index past `>`).
fn find_closing(src: &str, from: usize, name: &str) -> Option<(usize, usize)> {
    let mut pos = from;
    while let Some(off) = src[pos..].find("</") {
        let at = pos + off;
        if let Some(tag) = parse_tag(&src[at..]) {
            if tag.closing && tag.name == name {
                return Some((at, at + tag.len));
            }
        }
        pos = at + 2;
    }
    None
}

/// Matches nested `open`/`close` pairs starting at `start`; returns the index
/// just past the matching closer.
fn match_pairs(src: &str, start: usize, open: &str, close: &str) -> Option<usize> {
    let mut depth = 0usize;
    let mut i = start;
    while i < src.len() {
        let rest = &src[i..];
        if rest.starts_with(open) {
            depth += 1;
            i += open.len();
        } else if rest.starts_with(close) {
            depth -= 1;
            i += close.len();
            if depth == 0 {
                return Some(i);
            }
        } else {
            i += rest.chars().next().map_or(1, char::len_utf8);
        }
    }
    None
}

fn heading_inner(line: &str) -> Option<&str> {
    let t = line.trim_end();
    let lead = t.bytes().take_while(|&b| b == b'=').count();
    let trail = t.bytes().rev().take_while(|&b| b == b'=').count();
    let n = lead.min(trail).min(6).min(t.len() / 2);
    (n >= 2).then(|| &t[n..t.len() - n])
}

fn magic_word_len(s: &str) -> Option<usize> {
    let body = &s[2..];
    let word = body.bytes().take_while(u8::is_ascii_uppercase).count();
    (word > 0 && body[word..].starts_with("__")).then_some(word + 4)
}

fn namespace(target: &str) -> Option<String> {
    target.split_once(':').map(|(ns, _)| ns.trim().to_lowercase())
}

fn is_infobox(inner: &str) -> bool {
    let name = inner.trim_start();
    name.len() >= 7 && name.is_char_boundary(7) && name[..7].eq_ignore_ascii_case("infobox")
}

/// UTF-8 size of the infobox span, 0 without one.
pub fn extract_infobox_bytes(elems: &StructuralElements) -> usize {
    elems.infobox_raw.as_ref().map_or(0, String::len)
}

/// MediaWiki-style title normalization: underscores become spaces,
/// whitespace is collapsed and trimmed, the first character is uppercased.
pub fn normalize_title(title: &str) -> String {
    let spaced = title.replace('_', " ");
    let collapsed = spaced.split_whitespace().collect::<Vec<_>>().join(" ");
    let mut chars = collapsed.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Normalized page title a link points at, without section fragment.
fn link_title(target: &str) -> String {
    let target = target.trim().trim_start_matches(':');
    let page = target.split('#').next().unwrap_or("");
    normalize_title(page)
}

/// Set of normalized corpus titles, used to decide whether a link is broken.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TitleIndex {
    titles: std::collections::BTreeSet<String>,
}

impl TitleIndex {
    pub fn contains(&self, title: &str) -> bool {
        self.titles.contains(&normalize_title(title))
    }

    pub fn len(&self) -> usize {
        self.titles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.titles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.titles.iter().map(String::as_str)
    }

    /// Builds an index, rejecting titles that collide after normalization.
    pub fn from_titles<'a, I: IntoIterator<Item = &'a str>>(titles: I) -> Result<Self> {
        let mut seen: HashMap<String, &str> = HashMap::new();
        for title in titles {
            let norm = normalize_title(title);
            if let Some(first) = seen.insert(norm.clone(), title) {
                return Err(Error::DuplicateTitle {
                    normalized: norm,
                    first: first.to_string(),
                    second: title.to_string(),
                });
            }
        }
        Ok(TitleIndex {
            titles: seen.into_keys().collect(),
        })
    }
}

pub fn build_title_index(corpus: &[RawArticle]) -> Result<TitleIndex> {
    TitleIndex::from_titles(corpus.iter().map(|a| a.title.as_str()))
}

/// Returns `(num_wikilinks, num_broken)`. Duplicate links count each time.
/// A pure section link (`[[#Causes]]`) points at the article itself and is
/// never broken.
pub fn count_wikilinks(elems: &StructuralElements, index: &TitleIndex) -> (usize, usize) {
    let broken = elems
        .internal_links
        .iter()
        .map(|l| link_title(l))
        .filter(|t| !t.is_empty() && !index.titles.contains(t))
        .count();
    (elems.internal_links.len(), broken)
}
