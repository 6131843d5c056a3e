//! Worked examples with their published answers, as input-grammar strings.

#![allow(dead_code)]

pub struct Golden {
    pub name: &'static str,
    pub op: &'static str,
    pub rhs: &'static str,
    pub answer: &'static str,
}

pub const NON_RESONANT_EXPONENTIAL: Golden = Golden {
    name: "non_resonant_exponential",
    op: "3*D^2 - 2*D + 8",
    rhs: "5*exp(3*x)",
    answer: "5/29*exp(3*x)",
};

pub const RESONANT_EXPONENTIAL: Golden = Golden {
    name: "resonant_exponential",
    op: "(D-1)*(D+5)*(D-2)^3",
    rhs: "3*exp(2*x)",
    answer: "1/14*x^3*exp(2*x)",
};

pub const POLYNOMIALS: [Golden; 2] = [
    Golden {
        name: "cubic_rhs_invertible_operator",
        op: "D^3 - 5*D^2 + 3*D + 2",
        rhs: "2*x^3 + 4*x^2 - 6*x + 5",
        answer: "x^3 - 5/2*x^2 + 39/2*x - 169/4",
    },
    Golden {
        name: "cubic_rhs_operator_divisible_by_d",
        op: "D^3 - 3*D^2 + 2*D",
        rhs: "x^3 - 2*x^2",
        answer: "x^4/8 + 5/12*x^3 + 9/8*x^2 + 17/8*x",
    },
];

pub const TRIG: [Golden; 2] = [
    Golden {
        name: "trig_non_resonant",
        op: "2*D^3 + D^2 - 5*D + 3",
        rhs: "3*sin(2*x)",
        answer: "3/677*(26*cos(2*x) - sin(2*x))",
    },
    Golden {
        name: "trig_doubly_resonant",
        op: "(D-1)^2*(D-2)*(D^2+4)^2",
        rhs: "4*sin(2*x)",
        answer: "1/800*x^2*(cos(2*x) - 7*sin(2*x))",
    },
];

pub const PRODUCTS: [Golden; 7] = [
    Golden {
        name: "exponential_times_quadratic",
        op: "(D-3)^2*(D^2-2*D+5)*(D+2)",
        rhs: "(x^2 - 3*x + 1)*exp(2*x)",
        answer: "1/20*(x^2 - 3/10*x + 119/200)*exp(2*x)",
    },
    Golden {
        name: "exponential_times_linear_resonant",
        op: "(D-3)*(D-2)^2*(D+1)",
        rhs: "(4*x - 2)*exp(2*x)",
        answer: "-1/9*x^2*(2*x + 1)*exp(2*x)",
    },
    Golden {
        name: "trig_times_quadratic",
        op: "D^2 - 4",
        rhs: "(x^2 - 3)*sin(2*x)",
        answer: "-1/32*((4*x^2 - 13)*sin(2*x) + 4*x*cos(2*x))",
    },
    Golden {
        name: "resonant_trig_times_quadratic",
        op: "D^2 + 4",
        rhs: "4*x^2*cos(2*x)",
        answer: "1/24*(6*x^2*cos(2*x) + x*(8*x^2 - 3)*sin(2*x))",
    },
    Golden {
        name: "shifted_trig",
        op: "D^2 - 2*D + 2",
        rhs: "exp(2*x)*(2*cos(x) - 6*sin(x))",
        answer: "2/5*exp(2*x)*(7*cos(x) - sin(x))",
    },
    // the operator the worked solution actually inverts
    Golden {
        name: "shifted_resonant_trig",
        op: "(D-1)*((D-3)^2+4)",
        rhs: "4*exp(3*x)*cos(2*x)",
        answer: "1/4*x*exp(3*x)*(sin(2*x) - cos(2*x))",
    },
    Golden {
        name: "mixed_frequencies_shared_exponential",
        op: "D^2 + 2*D + 2",
        rhs: "exp(-x)*(3 + 2*sin(x) + 4*x^2*cos(x))",
        answer: "3*exp(-x) - x*exp(-x)*cos(x) + 1/3*exp(-x)*(3*x^2*cos(x) + x*(2*x^2 - 3)*sin(x))",
    },
];

pub fn all() -> Vec<&'static Golden> {
    let mut v = vec![&NON_RESONANT_EXPONENTIAL, &RESONANT_EXPONENTIAL];
    v.extend(POLYNOMIALS.iter());
    v.extend(TRIG.iter());
    v.extend(PRODUCTS.iter());
    v
}
