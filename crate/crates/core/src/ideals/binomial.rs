use std::sync::Arc;

use super::coeff::Field;
use super::ideal::Ideal;
use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::Result;
use crate::geometry::{Interval, Polyocollection};

/// `f_I = x_a·x_b − x_c·x_d`: diagonal corners minus anti-diagonal corners.
pub fn inner_minor<K: Field>(i: &Interval, ring: &Arc<Ring>) -> Result<Polynomial<K>> {
    let n = ring.nvars();
    let a = ring.vertex_index(i.lower_left())?;
    let b = ring.vertex_index(i.upper_right())?;
    let c = ring.vertex_index(i.upper_left())?;
    let d = ring.vertex_index(i.lower_right())?;
    Ok(Polynomial::binomial(ring, Monomial::from_pairs(n, &[(a, 1), (b, 1)]), Monomial::from_pairs(n, &[(c, 1), (d, 1)])))
}

/// The ring `K[x_a : a ∈ V(C)]` under degrevlex.
pub fn vertex_ring(c: &Polyocollection) -> Arc<Ring> {
    Ring::vertex_ring(c.vertices().iter().copied())
}

/// `I_C`, one generator per inner interval, in the vertex ring of `C`.
pub fn ideal_of<K: Field>(c: &Polyocollection) -> Ideal<K> {
    ideal_of_in(c, &vertex_ring(c)).expect("vertex ring holds every corner")
}

/// `I_C` in a ring containing `V(C)`.
pub fn ideal_of_in<K: Field>(c: &Polyocollection, ring: &Arc<Ring>) -> Result<Ideal<K>> {
    let gens = c.inner_intervals().iter().map(|i| inner_minor(i, ring)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::Point;
    use crate::ideals::coeff::Rational;
    use crate::ideals::io::parse_polynomial;

    #[test]
    fn unit_cell_minor() {
        let c = fixtures::unit_cell();
        let ring = vertex_ring(&c);
        let f: Polynomial<Rational> = inner_minor(&c.members()[0], &ring).unwrap();
        assert_eq!(f, parse_polynomial(&ring, "x_0_0*x_1_1 - x_0_1*x_1_0").unwrap());
        let missing = Interval::new(Point::new(5, 5), Point::new(6, 6)).unwrap();
        assert!(inner_minor::<Rational>(&missing, &ring).is_err());
    }

    #[test]
    fn fixture_d_generators() {
        let c = fixtures::d();
        let ring = vertex_ring(&c);
        assert_eq!(ring.nvars(), 14);
        let i: Ideal<Rational> = ideal_of(&c);
        let expected = [
            "x_4_2*x_5_3 - x_4_3*x_5_2",
            "x_3_3*x_4_4 - x_3_4*x_4_3",
            "x_2_3*x_4_4 - x_2_4*x_4_3",
            "x_2_3*x_3_4 - x_2_4*x_3_3",
            "x_2_1*x_4_2 - x_2_2*x_4_1",
            "x_1_2*x_2_3 - x_1_3*x_2_2",
        ];
        let mut got: Vec<Polynomial<Rational>> = i.generators().to_vec();
        let mut want: Vec<Polynomial<Rational>> =
            expected.iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
        got.sort_by_key(|p| p.to_string());
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
    }
}
