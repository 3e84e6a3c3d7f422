//! Random coefficient sets, optionally drawn from the solution space of a class.

use num_traits::Zero;
use rand::Rng;

use super::coefficients::{BCoefficients, NCOEF};
use super::profile::ClassId;
use crate::scalar::{rat, Rational};

/// Small random rational `p/q`, zero with probability about 1/6.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    if rng.random_range(0..6) == 0 {
        return Rational::zero();
    }
    rat(rng.random_range(-6..=6), rng.random_range(1..=5))
}

fn nonzero_or_retry(n: usize, a: Vec<Rational>) -> Option<BCoefficients> {
    BCoefficients::new(n, a).ok()
}

/// A random coefficient vector lying on the relations that define `class`
/// (class 4 draws unconstrained vectors). The result may land in a smaller
/// class when the free parameters happen to satisfy further relations.
pub fn random_in_class<R: Rng + ?Sized>(rng: &mut R, n: usize, class: ClassId) -> BCoefficients {
    let ni = n as i64;
    let n1 = rat(ni - 1, 1);
    let n2 = rat(ni - 2, 1);
    loop {
        let mut a: Vec<Rational> = (0..NCOEF).map(|_| small_rational(rng)).collect();
        match class {
            ClassId::Class1 => {
                let (a7, a9) = (a[7].clone(), a[9].clone());
                a[0] = -&a9 * &n2 * &n1;
                a[1] = &a7 * &n2;
                a[2] = -&a7 + &n1 * &a9;
                a[5] = a[2].clone();
                a[3] = -(&n1 * &a9);
                a[6] = a[3].clone();
                a[4] = a7.clone();
                a[8] = -&a9 + &a7 / &n1;
                a[10] = -(&a7 / &n1);
            }
            ClassId::Class2 => {
                let (a6, a7) = (a[6].clone(), a[7].clone());
                a[0] = &a6 * &n2;
                a[1] = &a7 * &n2;
                a[2] = -&a6 - &a7;
                a[5] = a[2].clone();
                a[3] = a6;
                a[4] = a7;
            }
            ClassId::Class3 => {
                let n = rat(ni, 1);
                let nn1 = rat(ni * (ni - 1), 1);
                a[0] = &n1 * (&a[3] + &a[6] + &n * &a[9]);
                a[8] = -(&a[1] + &n1 * (&a[2] + &a[3] + &a[5] + &a[6] + &n * &a[9])) / &nn1;
                a[10] = (&a[1] - &n1 * (&a[4] + &a[7])) / &nn1;
            }
            ClassId::Class4 => {}
        }
        if let Some(c) = nonzero_or_retry(n, a) {
            return c;
        }
    }
}

/// Class chosen uniformly, then a vector drawn from its solution space.
pub fn random_biased<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BCoefficients {
    let class = ClassId::from_number(rng.random_range(1..=4)).unwrap();
    random_in_class(rng, n, class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btensor::profile::{class_relations_check, classify};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampled_class1_vectors_are_class1() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=6 {
            for _ in 0..200 {
                let c = random_in_class(&mut rng, n, ClassId::Class1);
                assert_eq!(classify(&c).class, ClassId::Class1);
            }
        }
    }

    #[test]
    fn samples_reach_every_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = [0usize; 4];
        for _ in 0..400 {
            let c = random_biased(&mut rng, 4);
            let v = class_relations_check(&c);
            assert!(v.agrees, "{c}");
            seen[v.classified.number() as usize - 1] += 1;
        }
        assert!(seen.iter().all(|&k| k > 20), "{seen:?}");
    }
}
