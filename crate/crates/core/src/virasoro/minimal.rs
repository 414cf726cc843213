//! Minimal-model parameter arithmetic and the finite scans backing the
//! positive-energy classification.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalars::{rat, MPoly, Rat};

/// c_{p,q} = 1 - 6 (p-q)^2 / (p q) for coprime p, q >= 2.
pub fn central_charge(p: u64, q: u64) -> Result<Rat> {
    check_coprime(p, q)?;
    let d = (p as i64 - q as i64).pow(2);
    Ok(rat(1, 1) - rat(6 * d, (p * q) as i64))
}

/// h_{m,n} = ((n p - m q)^2 - (p - q)^2) / (4 p q) for 0 < m < p, 0 < n < q.
pub fn lowest_weight(p: u64, q: u64, m: u64, n: u64) -> Result<Rat> {
    check_coprime(p, q)?;
    if m == 0 || m >= p || n == 0 || n >= q {
        return Err(Error::BadSpec(format!(
            "weight label (m, n) = ({m}, {n}) outside 0 < m < {p}, 0 < n < {q}"
        )));
    }
    let a = (n as i64) * (p as i64) - (m as i64) * (q as i64);
    let b = p as i64 - q as i64;
    Ok(rat(a * a - b * b, 4 * (p * q) as i64))
}

fn check_coprime(p: u64, q: u64) -> Result<()> {
    if p < 2 || q < 2 {
        return Err(Error::BadSpec(format!(
            "minimal model needs p, q >= 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::BadSpec(format!("p = {p} and q = {q} not coprime")));
    }
    Ok(())
}

/// Scan all coprime 2 <= p, q <= bound and all admissible (m, n) for
/// h_{m,n} = 1; the returned list is expected to be empty.
pub fn h_equals_one_scan(bound: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut hits = Vec::new();
    for p in 2..=bound {
        for q in 2..=bound {
            if p.gcd(&q) != 1 {
                continue;
            }
            let d = (p as i128 - q as i128) * (p as i128 - q as i128);
            let four_pq = 4 * (p as i128) * (q as i128);
            for m in 1..p {
                for n in 1..q {
                    let a = (n as i128) * (p as i128) - (m as i128) * (q as i128);
                    if a * a - d == four_pq {
                        hits.push((p, q, m, n));
                    }
                }
            }
        }
    }
    hits
}

/// Verify m n + h_{m,n} - 1 = ((n p + m q)^2 - (p + q)^2) / (4 p q) as a
/// polynomial identity in formal p, q, m, n after clearing 4 p q.
pub fn mn_identity_check() -> bool {
    type P4 = MPoly<4>;
    let p = P4::var(0);
    let q = P4::var(1);
    let m = P4::var(2);
    let n = P4::var(3);
    let four_pq = p.mul(&q).scale(&rat(4, 1));
    let np_mq = n.mul(&p).sub(&m.mul(&q));
    let np_plus = n.mul(&p).add(&m.mul(&q));
    let p_minus_q = p.sub(&q);
    let p_plus_q = p.add(&q);
    // 4pq*mn + (np-mq)^2 - (p-q)^2 - 4pq  ==  (np+mq)^2 - (p+q)^2
    let lhs = four_pq
        .mul(&m.mul(&n))
        .add(&np_mq.mul(&np_mq))
        .sub(&p_minus_q.mul(&p_minus_q))
        .sub(&four_pq);
    let rhs = np_plus.mul(&np_plus).sub(&p_plus_q.mul(&p_plus_q));
    lhs.sub(&rhs).is_zero()
}
