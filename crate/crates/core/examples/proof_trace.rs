//! Counting-argument trace for a few hypothetical rank profiles.

use reflexff::census::{parse_profile, proof_trace};

fn main() -> reflexff::Result<()> {
    let cases = [(2, 3, 2, "2:4"), (2, 3, 2, "1:1,2:3"), (3, 5, 3, "3:27"), (2, 2, 2, "1:1,2:3")];
    for (q, p, n, text) in cases {
        let profile = parse_profile(text)?;
        let t = proof_trace(q, p, n, &profile)?;
        println!("q={q} p={p} n={n} profile {text}: |N| = {}", t.incidence_count);
        for v in &t.verdicts {
            println!("  {:<20} {:<5} {} vs {}", v.name, v.holds, v.lhs, v.rhs);
        }
        for note in &t.notes {
            println!("  note: {note}");
        }
        println!("  contradiction: {} {:?}", t.contradiction, t.contradicted_by);
    }
    Ok(())
}
