//! Shared fixtures: the extended QR families of lengths 192 and 200 and
//! their reference rows.
#![allow(dead_code)]

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use weightenum::spectra::{build_system, doubly_even_support, AffineForm, AffineSpectrum};

pub fn big(s: &str) -> BigInt {
    BigInt::from_str(s).unwrap()
}

pub fn form(constant: &str, coeffs: &[i64]) -> AffineForm {
    AffineForm {
        constant: BigRational::from_integer(big(constant)),
        coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
    }
}

pub fn eqr192() -> AffineSpectrum {
    let p = doubly_even_support(192, 28);
    let mut f = build_system(&p, &p, 192, 96, true).unwrap();
    f.qr_reparameterize().unwrap();
    f
}

pub fn eqr200() -> AffineSpectrum {
    let p = doubly_even_support(200, 32);
    let mut f = build_system(&p, &p, 200, 100, true).unwrap();
    f.qr_reparameterize().unwrap();
    f
}

pub const TABLE_192: &[(usize, &str, i64, i64)] = &[
    (0, "1", 0, 0),
    (28, "0", 48, 0),
    (32, "0", 0, 6),
    (36, "69065734464", 11568, -192),
    (40, "16681003659936", -387072, 2976),
    (44, "2638181865286080", 4662144, -29760),
    (48, "260118707412159120", -30019584, 215760),
    (52, "16506204128755716672", 102079872, -1208256),
    (56, "688919563458768198624", -7108608, 5437152),
    (60, "19261567021963529559744", -2055291840, -20195136),
    (64, "366292346792783194741815", 13670572032, 63109800),
    (68, "4798230291291549388046400", -56511000000, -168292800),
    (72, "43753732703694320252103840", 175210813440, 387073440),
    (76, "280144274178089715889150656", -434619319680, -774146880),
    (80, "1268289709189717721455882224", 890278318080, 1354757040),
    (84, "4082464373929527973794806080", -1533608219520, -2084241600),
    (88, "9382224038665793129097020640", 2246629754880, 2828613600),
    (92, "15439604564036779974450436032", -2818036032480, -3394336320),
    (96, "18224832149069836877698945680", 3037942333440, 3606482340),
];

pub const SUBSTITUTED_192: &[(usize, &str)] = &[
    (0, "1"),
    (28, "870960"),
    (32, "118690074"),
    (36, "65477553456"),
    (40, "16732850515200"),
    (44, "2637677757121920"),
    (48, "260122430801868480"),
    (52, "16506182079662652288"),
    (56, "688919670885778044672"),
    (60, "19261566585176561409600"),
    (64, "366292348289253529616655"),
    (68, "4798230286937043145435200"),
    (72, "43753732714530483001478400"),
    (76, "280144274154889623254545536"),
    (80, "1268289709232671190425713984"),
    (84, "4082464373860470854361969280"),
    (88, "9382224038762512952249552640"),
    (92, "15439604563918501039140805152"),
    (96, "18224832149196302617308263340"),
];

pub const TABLE_200: &[(usize, &str, i64)] = &[
    (32, "0", 25),
    (36, "21005534550", -450),
    (40, "6467522952660", 1225),
    (44, "1252975498471200", 48800),
    (48, "152872620852751800", -824600),
    (52, "12069364505468120400", 7427600),
    (56, "630615147670747950200", -46927800),
    (60, "22215915779698502141280", 227986400),
    (64, "535999851662996527356550", -892437300),
    (68, "8973312175360724436541800", 2896038600),
    (72, "105388467829350995361897825", -7941316500),
    (76, "876310274663366548170765600", 18652452000),
    (80, "5197894915757311013178267720", -37900941000),
    (84, "22129281942550350836000132400", 67117542000),
    (88, "67949637583204730713462120200", -104150049000),
    (92, "151037779970268049961942408800", 142175052000),
    (96, "243659108313146247784654076100", -171190052250),
    (100, "285720732951827690430040227204", 182092000500),
];
