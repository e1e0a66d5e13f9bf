//! Synthetic wikitext corpora with a known relation between markup and
//! quality class, for benchmarks and end-to-end checks.
//!
//! Terminology is drawn from the bundled dictionary, so mention counts are
//! only meaningful together with [`Dictionary::bundled`](crate::dictionary::Dictionary::bundled).

use std::fmt::Write as _;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{QualityClass, RawArticle};

const FILLER: &[&str] = &[
    "lorem",
    "ipsum",
    "dolor",
    "amet",
    "consectetur",
    "adipiscing",
    "elit",
    "tempor",
    "incididunt",
    "labore",
    "magna",
    "aliqua",
    "enim",
    "minim",
    "veniam",
    "nostrud",
    "exercitation",
    "ullamco",
    "laboris",
    "aliquip",
    "commodo",
    "consequat",
];

const TERMS: &[&str] = &[
    "fever",
    "cough",
    "headache",
    "nausea",
    "dementia",
    "influenza",
    "pneumonia",
    "asthma",
    "aspirin",
    "insulin",
    "surgery",
    "dialysis",
    "liver",
    "kidney",
    "migraine",
    "anemia",
];

/// What one generated article contains.
#[derive(Debug, Clone)]
struct Layout {
    headings: usize,
    links: usize,
    broken_links: usize,
    refs: usize,
    images: usize,
    mentions: usize,
    infobox_fields: usize,
    /// Hidden comment of this many bytes, to balance infobox bytes.
    comment_bytes: usize,
    category: Option<&'static str>,
    target_bytes: usize,
}

fn infobox(fields: usize) -> String {
    let mut s = String::from("{{Infobox medical condition\n| name = Topic\n");
    for i in 0..fields {
        let _ = writeln!(s, "| field{i} = value {i}");
    }
    s.push_str("}}\n");
    s
}

fn render(title: &str, layout: &Layout, titles: &[String], rng: &mut ChaCha8Rng) -> String {
    // every unit of markup is a prose token to be spread over the sections
    let mut units: Vec<String> = Vec::new();
    for _ in 0..layout.links {
        units.push(format!("[[{}]]", titles.choose(rng).expect("non-empty title list")));
    }
    for i in 0..layout.broken_links {
        units.push(format!("[[Missing topic {}]]", rng.random_range(0..1_000_000) + i));
    }
    for i in 0..layout.refs {
        units.push(format!("<ref>Source {i}.</ref>"));
    }
    for i in 0..layout.images {
        units.push(format!("[[File:Figure {i}.png|thumb|Figure]]"));
    }
    for _ in 0..layout.mentions {
        units.push(TERMS.choose(rng).unwrap().to_string());
    }
    for i in (1..units.len()).rev() {
        units.swap(i, rng.random_range(0..=i));
    }

    let mut head = String::new();
    if layout.infobox_fields > 0 {
        head.push_str(&infobox(layout.infobox_fields));
    }
    if layout.comment_bytes > 0 {
        // "<!-- " + body + " -->\n"
        let _ = writeln!(head, "<!-- {} -->", "x".repeat(layout.comment_bytes.saturating_sub(10)));
    }
    let _ = write!(head, "'''{title}''' {}", FILLER.choose(rng).unwrap());

    let sections = layout.headings + 1;
    let mut bodies: Vec<Vec<String>> = vec![Vec::new(); sections];
    for (i, u) in units.into_iter().enumerate() {
        bodies[i % sections].push(u);
    }
    let mut tail = String::new();
    if let Some(c) = layout.category {
        let _ = write!(tail, "\n[[Category:{c}]]");
    }

    let assemble = |bodies: &[Vec<String>]| {
        let mut s = head.clone();
        for (i, body) in bodies.iter().enumerate() {
            if i > 0 {
                let _ = write!(s, "\n\n== Section {i} ==\n");
            }
            for w in body {
                s.push(' ');
                s.push_str(w);
            }
            s.push('.');
        }
        s.push_str(&tail);
        s
    };

    // each filler word adds itself plus one space
    let mut len = assemble(&bodies).len();
    let mut next = 0;
    while len < layout.target_bytes {
        let word = FILLER.choose(rng).unwrap();
        bodies[next % sections].push(word.to_string());
        len += word.len() + 1;
        next += 1;
    }
    assemble(&bodies)
}

fn titles_for(n: usize, prefix: &str) -> Vec<String> {
    (0..n).map(|i| format!("{prefix} {i:04}")).collect()
}

fn generate(
    per_class: usize,
    seed: u64,
    prefix: &str,
    mut layout_for: impl FnMut(QualityClass, &mut ChaCha8Rng) -> Layout,
) -> Vec<RawArticle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = per_class * QualityClass::ALL.len();
    let titles = titles_for(n, prefix);
    (0..n)
        .map(|i| {
            let class = QualityClass::ALL[i % QualityClass::ALL.len()];
            let layout = layout_for(class, &mut rng);
            let text = render(&titles[i], &layout, &titles, &mut rng);
            RawArticle::new(titles[i].clone(), text, class)
        })
        .collect()
}

/// Articles whose structure grows with quality, so every feature moves
/// with the class and the headings alone separate the classes.
pub fn separable_corpus(per_class: usize, seed: u64) -> Vec<RawArticle> {
    const CATEGORIES: [Option<&str>; 6] = [
        Some("Medicine stubs"),
        Some("Human anatomy"),
        Some("1901 births"),
        Some("Rare diseases"),
        Some("First aid"),
        Some("Rare diseases"),
    ];
    generate(per_class, seed, "Separable topic", |class, rng| {
        let c = class.index();
        Layout {
            headings: 3 * c + rng.random_range(0..=1),
            links: 4 * c + rng.random_range(0..=2),
            broken_links: c + rng.random_range(0..=1),
            refs: 5 * c + rng.random_range(0..=2),
            images: c,
            mentions: 4 * c + rng.random_range(0..=2),
            infobox_fields: 2 * c,
            comment_bytes: 0,
            category: CATEGORIES[c],
            target_bytes: 400 * (c + 1) * (c + 1) + rng.random_range(0..100),
        }
    })
}

/// Articles whose class is visible only through the medical-domain
/// features.
///
/// Classes form pairs (Stub, Start), (C, B), (GA, FA). Terminology mention
/// counts identify the pair; the second member of each pair carries an
/// infobox and a disorder category. Headings, links, references, images and
/// size are drawn independently of the class, and first members carry a
/// hidden comment of the infobox's size so byte counts stay balanced.
pub fn domain_signal_corpus(per_class: usize, seed: u64) -> Vec<RawArticle> {
    const INFOBOX_FIELDS: usize = 8;
    let infobox_bytes = infobox(INFOBOX_FIELDS).len();
    generate(per_class, seed, "Domain topic", |class, rng| {
        let (pair, second) = (class.index() / 2, class.index() % 2 == 1);
        Layout {
            headings: rng.random_range(0..=8),
            links: rng.random_range(0..=10),
            broken_links: rng.random_range(0..=4),
            refs: rng.random_range(0..=10),
            images: rng.random_range(0..=3),
            mentions: 12 * pair + rng.random_range(0..=3),
            infobox_fields: if second { INFOBOX_FIELDS } else { 0 },
            comment_bytes: if second { 0 } else { infobox_bytes },
            // equal lengths keep the byte count class-independent
            category: Some(if second { "Rare diseases" } else { "Health topics" }),
            target_bytes: rng.random_range(3000..6000),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::Dictionary;
    use crate::features::{Category, FeatureExtractor};
    use crate::text::TextPipeline;
    use crate::wikitext::build_title_index;

    #[test]
    fn deterministic_and_sized() {
        let a = separable_corpus(3, 9);
        assert_eq!(a.len(), 18);
        assert_eq!(a, separable_corpus(3, 9));
        assert_ne!(a, separable_corpus(3, 10));
    }

    #[test]
    fn separable_headings_follow_class() {
        let corpus = separable_corpus(4, 1);
        let p = TextPipeline::bundled();
        let d = Dictionary::bundled(&p);
        let idx = build_title_index(&corpus).unwrap();
        let ex = FeatureExtractor::new(&idx, &d, &p);
        for a in &corpus {
            let v = ex.extract(a);
            let c = a.label.index() as f64;
            assert!(v.num_headings >= 3.0 * c && v.num_headings <= 3.0 * c + 1.0, "{v:?}");
            let m = v.domain_informativeness;
            assert!(m >= 4.0 * c && m <= 4.0 * c + 2.0, "{} {m}", a.label);
        }
    }

    #[test]
    fn domain_signal_layout() {
        let corpus = domain_signal_corpus(5, 2);
        let p = TextPipeline::bundled();
        let d = Dictionary::bundled(&p);
        let idx = build_title_index(&corpus).unwrap();
        let ex = FeatureExtractor::new(&idx, &d, &p);
        for a in &corpus {
            let v = ex.extract(a);
            let (pair, second) = (a.label.index() / 2, a.label.index() % 2 == 1);
            let m = v.domain_informativeness;
            assert!(m >= 12.0 * pair as f64 && m <= 12.0 * pair as f64 + 3.0, "{m}");
            assert_eq!(v.infobox_norm_size > 0.0, second);
            assert_eq!(v.category, if second { Category::D } else { Category::O });
            assert!((3000..6100).contains(&a.byte_length()), "{}", a.byte_length());
        }
    }
}
