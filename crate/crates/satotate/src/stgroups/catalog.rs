//! Catalog of the Sato-Tate groups arising for abelian varieties of
//! dimension up to 3 (connected cases, plus the genus-1 normalizer and
//! the two genus-2 CM normalizer distributions), with exact trace moments
//! through order 10 and the zero-trace mass of each measure.

use crate::error::{Error, Result};
use crate::stgroups::moments::{
    convolve_moments, scale_moments, su2_moments, u1_moments, usp4_closed_form, MomentSequence,
};
use crate::stgroups::walks::walk_moments_usp;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const CATALOG_MOMENT_DEPTH: usize = 10;

#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: &'static str,
    pub genus: u32,
    /// Exact trace moments `M_0..M_10`.
    pub moments: MomentSequence,
    /// Mass of the atom at trace zero (zero for connected groups).
    pub zero_trace_density: BigRational,
    pub connected: bool,
    /// Real endomorphism algebra of the generic abelian variety with this
    /// Sato-Tate group, when the label is standard.
    pub algebra: Option<&'static str>,
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn consts(values: [i64; 11]) -> MomentSequence {
    values
        .into_iter()
        .map(|v| BigRational::from_integer(BigInt::from(v)))
        .collect()
}

pub fn catalog_names() -> Vec<&'static str> {
    vec![
        // genus 1
        "U(1)",
        "SU(2)",
        "N(U(1))",
        // genus 2
        "U(1)_2",
        "SU(2)_2",
        "U(1)xU(1)",
        "U(1)xSU(2)",
        "SU(2)xSU(2)",
        "USp(4)",
        "D_6_1",
        "D_6_2",
        // genus 3
        "U(1)_3",
        "SU(2)_3",
        "U(1)xU(1)_2",
        "U(1)xSU(2)_2",
        "SU(2)xU(1)_2",
        "SU(2)xSU(2)_2",
        "U(1)xU(1)xU(1)",
        "U(1)xU(1)xSU(2)",
        "U(1)xSU(2)xSU(2)",
        "SU(2)xSU(2)xSU(2)",
        "U(1)xUSp(4)",
        "SU(2)xUSp(4)",
        "U(3)",
        "USp(6)",
    ]
}

pub fn catalog_group(name: &str) -> Result<GroupSpec> {
    let d = CATALOG_MOMENT_DEPTH;
    let u1 = u1_moments(d);
    let su2 = su2_moments(d);
    let usp4 = usp4_closed_form(d);
    let conv = |a: &MomentSequence, b: &MomentSequence| convolve_moments(a, b).unwrap();
    let spec = |genus: u32,
                moments: MomentSequence,
                zero: BigRational,
                connected: bool,
                algebra: Option<&'static str>| GroupSpec {
        name: catalog_names()
            .into_iter()
            .find(|n| *n == name)
            .unwrap_or("?"),
        genus,
        moments,
        zero_trace_density: zero,
        connected,
        algebra,
    };
    let zero = BigRational::zero;
    Ok(match name {
        "U(1)" => spec(1, u1, zero(), true, Some("C")),
        "SU(2)" => spec(1, su2, zero(), true, Some("R")),
        "N(U(1))" => {
            // half the arcsine moments plus a mass-1/2 atom at zero
            let m = u1
                .iter()
                .enumerate()
                .map(|(n, v)| if n == 0 { BigRational::one() } else { v / rat(2, 1) })
                .collect();
            spec(1, m, rat(1, 2), false, None)
        }
        "U(1)_2" => spec(2, scale_moments(&u1, 2), zero(), true, Some("M_2(C)")),
        "SU(2)_2" => spec(2, scale_moments(&su2, 2), zero(), true, Some("M_2(R)")),
        "U(1)xU(1)" => spec(2, conv(&u1, &u1), zero(), true, Some("CxC")),
        "U(1)xSU(2)" => spec(2, conv(&u1, &su2), zero(), true, Some("CxR")),
        "SU(2)xSU(2)" => spec(2, conv(&su2, &su2), zero(), true, Some("RxR")),
        "USp(4)" => spec(2, usp4, zero(), true, Some("R")),
        // normalizer distributions of the CM surfaces with Jacobian
        // isogenous to a square of a CM elliptic curve
        "D_6_1" => spec(
            2,
            consts([1, 0, 1, 0, 9, 0, 110, 0, 1505, 0, 21546]),
            rat(3, 4),
            false,
            None,
        ),
        "D_6_2" => spec(
            2,
            consts([1, 0, 2, 0, 18, 0, 200, 0, 2450, 0, 31752]),
            rat(7, 12),
            false,
            None,
        ),
        "U(1)_3" => spec(3, scale_moments(&u1, 3), zero(), true, Some("M_3(C)")),
        "SU(2)_3" => spec(3, scale_moments(&su2, 3), zero(), true, Some("M_3(R)")),
        "U(1)xU(1)_2" => spec(
            3,
            conv(&u1, &scale_moments(&u1, 2)),
            zero(),
            true,
            Some("CxM_2(C)"),
        ),
        "U(1)xSU(2)_2" => spec(
            3,
            conv(&u1, &scale_moments(&su2, 2)),
            zero(),
            true,
            Some("CxM_2(R)"),
        ),
        "SU(2)xU(1)_2" => spec(
            3,
            conv(&su2, &scale_moments(&u1, 2)),
            zero(),
            true,
            Some("RxM_2(C)"),
        ),
        "SU(2)xSU(2)_2" => spec(
            3,
            conv(&su2, &scale_moments(&su2, 2)),
            zero(),
            true,
            Some("RxM_2(R)"),
        ),
        "U(1)xU(1)xU(1)" => spec(3, conv(&conv(&u1, &u1), &u1), zero(), true, Some("CxCxC")),
        "U(1)xU(1)xSU(2)" => spec(
            3,
            conv(&conv(&u1, &u1), &su2),
            zero(),
            true,
            Some("CxCxR"),
        ),
        "U(1)xSU(2)xSU(2)" => spec(
            3,
            conv(&conv(&u1, &su2), &su2),
            zero(),
            true,
            Some("CxRxR"),
        ),
        "SU(2)xSU(2)xSU(2)" => spec(
            3,
            conv(&conv(&su2, &su2), &su2),
            zero(),
            true,
            Some("RxRxR"),
        ),
        "U(1)xUSp(4)" => spec(3, conv(&u1, &usp4), zero(), true, Some("CxR")),
        "SU(2)xUSp(4)" => spec(3, conv(&su2, &usp4), zero(), true, Some("RxR")),
        // validated against Weyl-integration quadrature in tests
        "U(3)" => spec(
            3,
            consts([1, 0, 2, 0, 12, 0, 120, 0, 1610, 0, 25956]),
            zero(),
            true,
            Some("C"),
        ),
        "USp(6)" => spec(
            3,
            walk_moments_usp(3, d)?
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
            zero(),
            true,
            Some("R"),
        ),
        other => return Err(Error::UnknownGroup(other.to_string())),
    })
}
