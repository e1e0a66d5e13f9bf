//! Structural elements of a single article.
//!
//! Run with `cargo run --example parse_wikitext`.

use medqual::wikitext::{build_title_index, count_wikilinks, extract_infobox_bytes, parse_wikitext};
use medqual::{QualityClass, RawArticle};

const SOURCE: &str = "{{Infobox medical condition
| name = Gout
| field = [[Rheumatology]]
}}
'''Gout''' is a form of [[arthritis]] marked by attacks of a red, tender joint.<ref>Smith 2010.</ref>

== Signs and symptoms ==
[[File:Gout2010.JPG|thumb|Gout in the big toe]]
Pain usually begins in the [[Metatarsophalangeal joint]]. See also [[Pseudogout]].
<!-- editors: expand this -->

== Treatment ==
[[Colchicine]] or [[NSAID]]s.<ref name=\"b\">Jones 2012.</ref> {{cite web|url=http://example.org}}

[[Category:Arthritis]]
[[Category:Rare diseases]]
";

fn main() {
    let e = parse_wikitext(SOURCE);
    println!("headings:        {:?}", e.headings);
    println!("internal links:  {:?}", e.internal_links);
    println!("references:      {}", e.references);
    println!("images:          {}", e.images);
    println!("categories:      {:?}", e.category_strings);
    println!("infobox bytes:   {}", extract_infobox_bytes(&e));

    let known: Vec<RawArticle> = ["Arthritis", "Colchicine", "NSAID", "Gout"]
        .iter()
        .map(|t| RawArticle::new(*t, "", QualityClass::Stub))
        .collect();
    let index = build_title_index(&known).unwrap();
    let (links, broken) = count_wikilinks(&e, &index);
    println!("wikilinks:       {links} ({broken} broken)");
    println!("\nplain text:\n{}", e.plain_text);
}
