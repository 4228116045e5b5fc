//! K-types, cone coordinates and the named support regions.

use su21::ktype::{from_ktype, to_ktype, ConeCoord, KType, SupportRegion};

fn main() -> su21::Result<()> {
    let t = 2;
    let v = to_ktype(t, ConeCoord::new(2, 1));
    println!("(p,q) = (2,1) at t = {t} is {v}; back: {:?}", from_ktype(t, v));
    let w = KType::new(3, 2)?;
    println!("neighbours of {w}: {:?}", w.neighbors());
    println!("V(2,2) is rejected: {}", KType::new(2, 2).is_err());

    for region in [
        SupportRegion::StripQ { t: 1, l: 0 },
        SupportRegion::VertexCone { r: 4, s: 3 },
        SupportRegion::RayNeg { s: -3 },
        SupportRegion::Sector { n: 2, m: 1, p_max: Some(1), q_max: Some(2) },
    ] {
        let members: Vec<String> = region.members(5)?.iter().map(ToString::to_string).collect();
        println!("{region}: {}", members.join(" "));
    }
    Ok(())
}
