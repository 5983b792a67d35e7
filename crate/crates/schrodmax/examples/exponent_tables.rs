//! Exact exponent arithmetic: the divergence thresholds p0 and p1, the
//! critical exponent 2(n+1)/n between them, and a sample of the theorem
//! exponent across (m, p).

use schrodmax::rational::Rational;
use schrodmax::scaling::{gamma_conjectured, p0, p1, theorem_exponent};

fn main() -> schrodmax::Result<()> {
    println!(
        "{:>3} {:>10} {:>12} {:>10} {:>4}",
        "n", "p0", "2(n+1)/n", "p1", "m*"
    );
    for n in 3..=8 {
        let lo = p0(n)?;
        let critical = Rational::new(2 * (n as i128 + 1), n as i128)?;
        let (hi, m_star) = p1(n)?;
        println!("{n:>3} {lo:>10} {critical:>12} {hi:>10} {m_star:>4}");
    }

    println!();
    println!("theorem exponent at n = 4:");
    println!("{:>4} {:>6} {:>10} {:>14}", "m", "p", "exponent", "gamma(n, p)");
    for m in 1..=4 {
        for p in [Rational::from_int(2), Rational::new(12, 5)?] {
            let e = theorem_exponent(4, m, p)?;
            let g = gamma_conjectured(4, p)?;
            println!("{m:>4} {p:>6} {e:>10} {g:>14}");
        }
    }
    Ok(())
}
