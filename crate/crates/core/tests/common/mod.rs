//! Independent oracles for integration tests: straightforward trial
//! division and brute-force counting, deliberately sharing no code with the
//! library's sieve or stratified paths.

// each test target uses a different subset
#![allow(dead_code)]

/// (radical, mobius, psi) by plain trial division.
pub fn naive_arith(n: u64) -> (u64, i8, u64) {
    assert!(n >= 1);
    let mut rem = n;
    let mut radical = 1u64;
    let mut psi = 1u64;
    let mut omega = 0u32;
    let mut p = 2u64;
    while p * p <= rem {
        if rem % p == 0 {
            radical *= p;
            psi *= p + 1;
            omega += 1;
            while rem % p == 0 {
                rem /= p;
            }
        }
        p += 1;
    }
    if rem > 1 {
        radical *= rem;
        psi *= rem + 1;
        omega += 1;
    }
    let mobius = if radical == n {
        if omega % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    };
    (radical, mobius, psi)
}

pub fn naive_radical(n: u64) -> u64 {
    naive_arith(n).0
}

pub fn naive_is_squarefree(n: u64) -> bool {
    naive_arith(n).1 != 0
}

/// Brute-force `S_θ(x)` with θ = a/b, boundary decided in u128.
pub fn brute_powered_count(x: u64, a: u32, b: u32) -> u64 {
    (1..=x)
        .filter(|&n| {
            let k = naive_radical(n) as u128;
            k.pow(b) <= (n as u128).pow(a)
        })
        .count() as u64
}

/// Brute-force `N(x, y)`.
pub fn brute_nuclear_count(x: u64, y: u64) -> u64 {
    (1..=x).filter(|&n| naive_radical(n) <= y).count() as u64
}
