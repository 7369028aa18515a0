use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CountError, SizeDistribution};
use crate::series::BivariateSeries;

/// `C(n, k)`, zero whenever `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

trait Arg: Copy {
    fn signed(self) -> i64;
}

impl Arg for usize {
    fn signed(self) -> i64 {
        self as i64
    }
}

impl Arg for i64 {
    fn signed(self) -> i64 {
        self
    }
}

fn c(n: impl Arg, k: impl Arg) -> BigInt {
    binomial(n.signed(), k.signed())
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn integral(r: BigRational, what: &'static str) -> Result<BigInt, CountError> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(CountError::NonIntegral(what))
    }
}

fn require(cond: bool, msg: &str) -> Result<(), CountError> {
    if cond {
        Ok(())
    } else {
        Err(CountError::InvalidParameter(msg.to_string()))
    }
}

fn require_k_above_one(k: usize) -> Result<(), CountError> {
    if k > 1 {
        Ok(())
    } else {
        Err(CountError::Unsupported("the closed form needs k > 1".into()))
    }
}

/// Structures with `b` arcs (plus the auxiliary arc) and `k` isolated bases.
pub fn narayana(b: usize, k: usize) -> Result<BigInt, CountError> {
    require(b + k > 0, "b + k must be positive")?;
    let n = b + k;
    integral(ratio(c(n, k) * c(n, k as i64 - 1), BigInt::from(n)), "narayana")
}

/// Structures with exactly `l` partial stacks.
pub fn count_by_partial_stacks(b: usize, k: usize, l: usize) -> Result<BigInt, CountError> {
    require(k >= 1 && l >= 1, "k and l must be at least 1")?;
    if l == 1 {
        return Ok(c(b + k - 1, k - 1));
    }
    let num = c(l + b - 1, l - 2) * c(b + 1, l) * c(b + k - 1, k as i64 - l as i64);
    integral(ratio(num, BigInt::from(l - 1)), "partial-stack count")
}

/// Structures whose partial stacks all have length at most `h`.
pub fn count_max_partial_stack(b: usize, k: usize, h: usize) -> Result<BigInt, CountError> {
    require(k >= 1 && h >= 1, "k and h must be at least 1")?;
    let n = (b + k) as i64;
    let mut sum = BigInt::zero();
    for i in 0..=(b + 1) / (h + 1) {
        let term = c(k, i) * c(n - (i * (h + 1)) as i64, k - 1);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    integral(ratio(c(n, k) * sum, BigInt::from(n)), "max-stack count")
}

/// Structures whose loops all have size at most `l`.
pub fn count_max_loop_size(b: usize, k: usize, l: usize) -> Result<BigInt, CountError> {
    require(k >= 1 && l >= 1, "k and l must be at least 1")?;
    let n = (b + k) as i64;
    let mut sum = BigInt::zero();
    for i in 0..=(k - 1) / l {
        let il = (i * l) as i64;
        let term = c(b + 1, i) * c(n - 1 - il, k as i64 - 1 - il);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    integral(ratio(c(n, b) * sum, BigInt::from(b + 1)), "max-loop count")
}

/// Structures with partial stacks of length at most `h` and loops of size at
/// most `l`, as the coefficient `[x1^(k-1) x2^(b+1)]` of
///
/// ```text
/// f1^k f2^(b+1) (1 - x1 x2 / (f1 f2) · f1' · f2')
/// ```
///
/// with `f1 = (1-x2^(h+1))/(1-x2)`, `f2 = (1-x1^l)/(1-x1)` and the derivative
/// factors written out as `(1-x^m)/(1-x)^2 - m x^m/(1-x)`.
pub fn count_max_both(b: usize, k: usize, h: usize, l: usize) -> Result<BigInt, CountError> {
    require(k >= 1 && h >= 1 && l >= 1, "k, h and l must be at least 1")?;
    let (c1, c2) = (k - 1, b + 1);
    let one = BivariateSeries::one(c1, c2);
    let x1 = BivariateSeries::x1(c1, c2);
    let x2 = BivariateSeries::x2(c1, c2);
    let (one_x1, one_x2) = (&one - &x1, &one - &x2);

    let f1 = (&one - &x2.pow(h as u32 + 1)).div(&one_x2)?;
    let f2 = (&one - &x1.pow(l as u32)).div(&one_x1)?;
    let derivative = |x: &BivariateSeries, one_x: &BivariateSeries, m: usize| {
        let xm = x.pow(m as u32);
        let first = (&one - &xm).div(&one_x.pow(2))?;
        let second = xm.scale(&BigInt::from(m)).div(one_x)?;
        Ok::<_, CountError>(&first - &second)
    };
    let d1 = derivative(&x2, &one_x2, h)?;
    let d2 = derivative(&x1, &one_x1, l - 1)?;
    let correction =
        (&(&x1 * &x2) * &(&one_x2 * &one_x1)).div(&(&(&one - &x1.pow(l as u32)) * &(&one - &x2.pow(h as u32 + 1))))?;
    let det = &one - &(&(&correction * &d1) * &d2);
    let body = &f1.pow(k as u32) * &f2.pow(b as u32 + 1);
    Ok(body.product_coeff(&det, c1, c2)?)
}

fn check_helices(b: usize, hd: &SizeDistribution) -> Result<(), CountError> {
    if hd.total() != b + 1 {
        return Err(CountError::InvalidDistribution(format!(
            "helix sizes {hd} sum to {}, expected b + 1 = {}",
            hd.total(),
            b + 1
        )));
    }
    Ok(())
}

fn check_loops(b: usize, k: usize, ld: &SizeDistribution) -> Result<(), CountError> {
    if ld.total() != b + k || ld.count() != b + 1 {
        return Err(CountError::InvalidDistribution(format!(
            "loop sizes {ld} need {} loops summing to {}",
            b + 1,
            b + k
        )));
    }
    Ok(())
}

/// `s! / prod a_i!` for the helix sizes.
fn arrangements(d: &SizeDistribution) -> BigRational {
    let denom = d.iter().fold(BigInt::one(), |acc, (_, m)| acc * factorial(m));
    ratio(factorial(d.count()), denom)
}

fn nontrivial_loops(ld: &SizeDistribution) -> usize {
    ld.iter().filter(|&(s, _)| s > 1).map(|(_, m)| m).sum()
}

/// `(l_o - 1)! / prod_{i>1} c_i!`.
fn loop_factor(ld: &SizeDistribution) -> BigRational {
    let l_o = nontrivial_loops(ld);
    let denom = ld.iter().filter(|&(s, _)| s > 1).fold(BigInt::one(), |acc, (_, m)| acc * factorial(m));
    ratio(factorial(l_o - 1), denom)
}

/// Structures with the given helix sizes, loop sizes and number of partial
/// stacks. Needs `k > 1`.
pub fn count_joint(
    b: usize,
    k: usize,
    hd: &SizeDistribution,
    ld: &SizeDistribution,
    l_e: usize,
) -> Result<BigInt, CountError> {
    require_k_above_one(k)?;
    check_helices(b, hd)?;
    check_loops(b, k, ld)?;
    let (s, l_o) = (hd.count() as i64, nontrivial_loops(ld) as i64);
    let l_e = l_e as i64;
    let tail = c(k - 1, l_e - 1) * c(s - 1, l_o - 1) * c(l_o, l_e + l_o - s);
    integral(arrangements(hd) * loop_factor(ld) * BigRational::from(tail), "joint count")
}

/// [`count_joint`] summed over the number of partial stacks.
pub fn count_joint_marginal(
    b: usize,
    k: usize,
    hd: &SizeDistribution,
    ld: &SizeDistribution,
) -> Result<BigInt, CountError> {
    require_k_above_one(k)?;
    check_helices(b, hd)?;
    check_loops(b, k, ld)?;
    let (s, l_o) = (hd.count() as i64, nontrivial_loops(ld) as i64);
    let tail = c(k as i64 - 1 + l_o, s - 1) * c(s - 1, l_o - 1);
    integral(arrangements(hd) * loop_factor(ld) * BigRational::from(tail), "joint marginal count")
}

/// `(1/(k-1)) sum_{l_o=1..s} C(k-1, l_o) C(s-1, l_o-1) C(k-1+l_o, s-1)`.
fn helix_sum(k: usize, s: usize) -> BigRational {
    let sum =
        (1..=s).fold(BigInt::zero(), |acc, l_o| acc + c(k - 1, l_o) * c(s - 1, l_o - 1) * c(k - 1 + l_o, s as i64 - 1));
    ratio(sum, BigInt::from(k - 1))
}

/// Structures with the given helix size distribution. Needs `k > 1`.
pub fn count_by_helix_distribution(b: usize, k: usize, hd: &SizeDistribution) -> Result<BigInt, CountError> {
    require_k_above_one(k)?;
    check_helices(b, hd)?;
    integral(arrangements(hd) * helix_sum(k, hd.count()), "helix-distribution count")
}

/// Structures with exactly `s` helices, each of size at least `sigma`.
/// Needs `k > 1`.
pub fn count_by_num_helices(b: usize, k: usize, s: usize, sigma: usize) -> Result<BigInt, CountError> {
    require_k_above_one(k)?;
    require(s >= 1 && sigma >= 1, "s and sigma must be at least 1")?;
    let compositions = c(b as i64 - ((sigma - 1) * s) as i64, s as i64 - 1);
    integral(BigRational::from(compositions) * helix_sum(k, s), "helix count")
}

/// Probability that a structure with `s` helices, all of size at least
/// `sigma`, has helix size distribution `hd`.
pub fn helix_distribution_probability(
    b: usize,
    k: usize,
    s: usize,
    sigma: usize,
    hd: &SizeDistribution,
) -> Result<BigRational, CountError> {
    require_k_above_one(k)?;
    require(s >= 1 && sigma >= 1, "s and sigma must be at least 1")?;
    check_helices(b, hd)?;
    if hd.count() != s {
        return Err(CountError::InvalidDistribution(format!("{hd} has {} helices, expected {s}", hd.count())));
    }
    if hd.min_size().is_some_and(|m| m < sigma) {
        return Err(CountError::InvalidDistribution(format!("{hd} has a helix smaller than {sigma}")));
    }
    // b - sigma s + 1 >= 0 holds because every helix has size >= sigma.
    let free = b + 1 - sigma * s;
    let num = factorial(s) * factorial(s - 1) * factorial(free);
    let denom = hd.iter().fold(factorial(free + s - 1), |acc, (_, m)| acc * factorial(m));
    Ok(ratio(num, denom))
}

/// Mean number of partial stacks over all structures with `b` arcs and `k`
/// isolated bases.
pub fn expected_partial_stacks(b: usize, k: usize) -> Result<BigRational, CountError> {
    require(k >= 1, "k must be at least 1")?;
    let mut weighted = BigInt::zero();
    for l in 1..=b + 1 {
        weighted += count_by_partial_stacks(b, k, l)? * l;
    }
    Ok(ratio(weighted, narayana(b, k)?))
}

/// Checks that the partial-stack counts over all `l` add up to the Narayana
/// number.
pub fn narayana_sum_identity_check(b: usize, k: usize) -> Result<bool, CountError> {
    let mut sum = BigInt::zero();
    for l in 1..=b + 1 {
        sum += count_by_partial_stacks(b, k, l)?;
    }
    Ok(sum == narayana(b, k)?)
}

/// One cell of a helix-count table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub s: usize,
    pub b: usize,
    pub k: usize,
    pub count: BigInt,
}

/// Helix-count tables over `(b, k) in {2,3,4} x {3,4,5}`: table 1 counts
/// structures with `s = 1..=5` helices of any size, table 2 those with
/// `s = 1..=2` helices of size at least 2. Rows run by `s`, then `b`, then `k`.
pub fn helix_table(id: usize) -> Result<Vec<TableRow>, CountError> {
    let (sigma, max_s) = match id {
        1 => (1, 5),
        2 => (2, 2),
        _ => return Err(CountError::InvalidParameter(format!("no table {id}; expected 1 or 2"))),
    };
    let mut rows = Vec::new();
    for s in 1..=max_s {
        for b in 2..=4 {
            for k in 3..=5 {
                rows.push(TableRow { s, b, k, count: count_by_num_helices(b, k, s, sigma)? });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn dist(s: &str) -> SizeDistribution {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(2, 3).unwrap(), big(20));
        assert_eq!(narayana(3, 4).unwrap(), big(175));
        assert_eq!(narayana(0, 1).unwrap(), big(1));
        assert!(narayana(0, 0).is_err());
    }

    #[test]
    fn partial_stacks() {
        let v: Vec<BigInt> = (1..=3).map(|l| count_by_partial_stacks(2, 3, l).unwrap()).collect();
        assert_eq!(v, vec![big(6), big(12), big(2)]);
        assert_eq!(count_by_partial_stacks(2, 3, 4).unwrap(), big(0));
    }

    #[test]
    fn max_stack_and_loop() {
        assert_eq!(count_max_partial_stack(1, 2, 1).unwrap(), big(1));
        assert_eq!(count_max_partial_stack(2, 3, 3).unwrap(), big(20));
        assert_eq!(count_max_partial_stack(2, 3, 1).unwrap(), big(2));
        for b in 0..6 {
            assert_eq!(count_max_loop_size(b, 1, 1).unwrap(), big(1));
        }
        assert_eq!(count_max_loop_size(2, 3, 2).unwrap(), big(10));
        assert_eq!(count_max_loop_size(2, 3, 5).unwrap(), big(20));
    }

    #[test]
    fn max_both() {
        assert_eq!(count_max_both(2, 3, 3, 5).unwrap(), big(20));
        assert_eq!(count_max_both(2, 3, 1, 5).unwrap(), big(2));
        assert_eq!(count_max_both(2, 3, 3, 2).unwrap(), big(10));
    }

    #[test]
    fn joint_counts() {
        let hd = dist("1:3");
        assert_eq!(count_joint(2, 3, &hd, &dist("1:1,2:2"), 2).unwrap(), big(4));
        assert_eq!(count_joint(2, 3, &hd, &dist("1:1,2:2"), 1).unwrap(), big(1));
        assert_eq!(count_joint_marginal(2, 3, &hd, &dist("1:1,2:2")).unwrap(), big(6));
        assert_eq!(count_joint_marginal(2, 3, &hd, &dist("1:2,3:1")).unwrap(), big(3));
        assert!(matches!(count_joint(2, 1, &hd, &dist("1:3"), 1), Err(CountError::Unsupported(_))));
        assert!(matches!(
            count_joint(2, 3, &dist("1:2"), &dist("1:1,2:2"), 1),
            Err(CountError::InvalidDistribution(_))
        ));
    }

    #[test]
    fn helix_counts() {
        assert_eq!(count_by_helix_distribution(2, 3, &dist("1:3")).unwrap(), big(9));
        assert_eq!(count_by_helix_distribution(2, 3, &dist("1:1,2:1")).unwrap(), big(10));
        assert_eq!(count_by_helix_distribution(2, 3, &dist("3:1")).unwrap(), big(1));
        assert_eq!(count_by_num_helices(2, 3, 3, 1).unwrap(), big(9));
        assert_eq!(count_by_num_helices(3, 4, 3, 1).unwrap(), big(93));
        assert_eq!(count_by_num_helices(3, 3, 2, 2).unwrap(), big(5));
        assert_eq!(count_by_num_helices(2, 3, 2, 2).unwrap(), big(0));
    }

    #[test]
    fn table_cells() {
        let t1 = helix_table(1).unwrap();
        assert_eq!(t1.len(), 45);
        let cell = |t: &[TableRow], s, b, k| t.iter().find(|r| (r.s, r.b, r.k) == (s, b, k)).unwrap().count.clone();
        assert_eq!(cell(&t1, 4, 3, 5), big(219));
        assert_eq!(cell(&t1, 5, 4, 3), big(2));
        let t2 = helix_table(2).unwrap();
        assert_eq!(t2.len(), 18);
        assert_eq!(cell(&t2, 2, 4, 5), big(28));
        assert!(helix_table(3).is_err());
    }

    #[test]
    fn probabilities() {
        let p = |b, s, sigma, d: &str| helix_distribution_probability(b, 4, s, sigma, &dist(d)).unwrap();
        assert_eq!(p(2, 3, 1, "1:3"), BigRational::one());
        assert_eq!(p(3, 2, 1, "2:2"), ratio(big(1), big(3)));
        assert_eq!(p(3, 2, 1, "1:1,3:1"), ratio(big(2), big(3)));
        assert!(helix_distribution_probability(3, 4, 2, 2, &dist("1:1,3:1")).is_err());
    }

    #[test]
    fn expectations_and_identity() {
        assert_eq!(expected_partial_stacks(2, 3).unwrap(), ratio(big(9), big(5)));
        assert_eq!(expected_partial_stacks(0, 4).unwrap(), BigRational::one());
        assert_eq!(expected_partial_stacks(1, 1).unwrap(), BigRational::one());
        assert!(narayana_sum_identity_check(2, 3).unwrap());
        assert!(narayana_sum_identity_check(0, 1).unwrap());
    }
}
