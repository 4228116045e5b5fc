//! The two cone embeddings of W(4,3) and the products on its K-types.

use su21::classifier::embed_w;
use su21::coefficients::{products_at, wrs_embeddings, wrs_products, ModuleParams};
use su21::module::support_of;

fn main() -> su21::Result<()> {
    let (r, s) = (4, 3);
    for (c, t) in wrs_embeddings(r, s)? {
        println!("W({r},{s}) sits in V(c = {c}, 2t = {})", 2 * t);
    }
    let vertex = wrs_products(r, s)?;
    println!("at the vertex: ad = {}, bc = {}", vertex.ad, vertex.bc);

    let [first, _] = embed_w(r, s)?;
    println!("constituent of the first embedding through its anchor: {}", support_of(&first)?);
    let w = ModuleParams::vertex(r, s)?;
    let region = support_of(&w)?;
    println!("support of W({r},{s}): {region}");
    for v in region.members(7)? {
        if let Some(pair) = products_at(&w, v)? {
            println!("  {v}: ad = {}, bc = {}", pair.ad, pair.bc);
        }
    }
    Ok(())
}
