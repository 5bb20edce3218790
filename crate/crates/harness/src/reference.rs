//! Published values used as fixed oracles: the tabulated Betti and de Rham
//! matrices for k = 2..5.

use brmatrices::QMatrix;
use exactalg::parse_q;

fn m(rows: &[&[&str]]) -> QMatrix {
    QMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_q(s).expect("literal")).collect())
            .collect(),
    )
    .expect("rectangular literal")
}

/// Indices covered by the table.
pub const TABLE_KS: std::ops::RangeInclusive<usize> = 2..=5;

pub fn betti_odd_table(k: usize) -> Option<QMatrix> {
    match k {
        2 => Some(m(&[&["1/80", "0"], &["0", "-3/64"]])),
        3 => Some(m(&[
            &["15/224", "0", "3/32"],
            &["0", "-5/64", "0"],
            &["3/32", "0", "3/16"],
        ])),
        4 => Some(m(&[
            &["21/16", "0", "15/16", "0"],
            &["0", "-105/128", "0", "-105/128"],
            &["15/16", "0", "45/64", "0"],
            &["0", "-105/128", "0", "-75/64"],
        ])),
        5 => Some(m(&[
            &["23625/352", "0", "945/32", "0", "675/32"],
            &["0", "-1701/64", "0", "-945/64", "0"],
            &["945/32", "0", "105/8", "0", "315/32"],
            &["0", "-945/64", "0", "-2205/256", "0"],
            &["675/32", "0", "315/32", "0", "675/64"],
        ])),
        _ => None,
    }
}

pub fn derham_odd_table(k: usize) -> Option<QMatrix> {
    match k {
        2 => Some(m(&[&["13/8", "225/64"], &["225/64", "0"]])),
        3 => Some(m(&[
            &["51/16", "2589/32", "11025/256"],
            &["2589/32", "11025/256", "0"],
            &["11025/256", "0", "0"],
        ])),
        4 => Some(m(&[
            &["21/4", "60519/64", "1270215/256", "893025/1024"],
            &["60519/64", "106497/128", "893025/1024", "0"],
            &["1270215/256", "893025/1024", "0", "0"],
            &["893025/1024", "0", "0", "0"],
        ])),
        5 => Some(m(&[
            &[
                "125/16",
                "65679/8",
                "25484133/128",
                "322307685/1024",
                "108056025/4096",
            ],
            &[
                "65679/8",
                "2475315/256",
                "64674153/1024",
                "108056025/4096",
                "0",
            ],
            &["25484133/128", "64674153/1024", "108056025/4096", "0", "0"],
            &["322307685/1024", "108056025/4096", "0", "0", "0"],
            &["108056025/4096", "0", "0", "0", "0"],
        ])),
        _ => None,
    }
}

pub fn betti_even_table(k: usize) -> Option<QMatrix> {
    match k {
        2 => Some(m(&[&["0", "1/32"], &["-1/32", "0"]])),
        3 => Some(m(&[
            &["0", "15/64", "0"],
            &["-15/64", "0", "-15/64"],
            &["0", "15/64", "0"],
        ])),
        4 => Some(m(&[
            &["0", "189/32", "0", "135/32"],
            &["-189/32", "0", "-105/32", "0"],
            &["0", "105/32", "0", "315/128"],
            &["-135/32", "0", "-315/128", "0"],
        ])),
        5 => Some(m(&[
            &["0", "23625/64", "0", "10395/64", "0"],
            &["-23625/64", "0", "-8505/64", "0", "-4725/64"],
            &["0", "8505/64", "0", "945/16", "0"],
            &["-10395/64", "0", "-945/16", "0", "-2205/64"],
            &["0", "4725/64", "0", "2205/64", "0"],
        ])),
        _ => None,
    }
}

pub fn derham_even_table(k: usize) -> Option<QMatrix> {
    match k {
        2 => Some(m(&[&["0", "-18"], &["18", "0"]])),
        3 => Some(m(&[
            &["0", "-288", "-576"],
            &["288", "0", "0"],
            &["576", "0", "0"],
        ])),
        4 => Some(m(&[
            &["0", "-11421/4", "-33807", "-21600"],
            &["11421/4", "0", "-7200", "0"],
            &["33807", "7200", "0", "0"],
            &["21600", "0", "0", "0"],
        ])),
        5 => Some(m(&[
            &["0", "-22608", "-1059156", "-3485808", "-1036800"],
            &["22608", "0", "-388800", "-518400", "0"],
            &["1059156", "388800", "0", "0", "0"],
            &["3485808", "518400", "0", "0", "0"],
            &["1036800", "0", "0", "0", "0"],
        ])),
        _ => None,
    }
}
