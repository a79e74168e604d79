#![allow(dead_code)]

use num_integer::Integer;
use plurilab::rational::{self, Rational};
use plurilab::{Basket, BasketSingularity, PluriData};
use rand::Rng;

pub fn random_point(rng: &mut impl Rng, r_max: i64) -> BasketSingularity {
    loop {
        let r = rng.gen_range(2..=r_max);
        let b = rng.gen_range(1..r);
        if b.gcd(&r) == 1 {
            return BasketSingularity::new(b, r).expect("coprime");
        }
    }
}

pub fn random_basket(rng: &mut impl Rng, r_max: i64, size_max: usize) -> Basket {
    let n = rng.gen_range(0..=size_max);
    Basket::from_points((0..n).map(|_| random_point(rng, r_max)))
}

/// Data whose `P_2..P_m_max` are all integers. `K^3` is chosen through `P_2`
/// and the draw is repeated until the remaining plurigenera are integral.
pub fn consistent_data(rng: &mut impl Rng, r_max: i64, size_max: usize, m_max: i64) -> PluriData {
    loop {
        let basket = random_basket(rng, r_max, size_max);
        let chi = rng.gen_range(-3..=3);
        let r2 = basket.correction_sum(2).expect("m = 2");
        // P_2 = K^3 / 2 - 3 chi + R_2
        let floor = rational::ceil(&(r2.clone() - rational::int(3 * chi)));
        let p2 = Rational::from_integer(floor) + rational::int(rng.gen_range(0..4));
        let k3 = (p2 + rational::int(3 * chi) - r2) * rational::int(2);
        if !rational::is_positive(&k3) {
            continue;
        }
        let data = PluriData::new(chi, k3, basket).expect("valid");
        if (2..=m_max).all(|m| rational::is_integral(&data.plurigenus(m).expect("m >= 2"))) {
            return data;
        }
    }
}

pub fn sequence(data: &PluriData, m_max: i64) -> Vec<(i64, i64)> {
    (2..=m_max).map(|m| (m, rational::to_i64(&data.plurigenus(m).expect("m >= 2")).expect("integral"))).collect()
}
