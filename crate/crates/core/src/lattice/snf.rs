//! Smith normal form over the integers.

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix, all
/// positive. The number of returned factors is the rank.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut diag: Vec<i128> = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // pivot: smallest nonzero absolute value in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(diag);
            };
            a.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / piv;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / piv;
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(piv.abs());
                break;
            }
        }
    }
    finish(diag)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn finish(mut d: Vec<i128>) -> Vec<i64> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(d[i], d[j]);
            let l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().map(|x| i64::try_from(x).expect("invariant factor fits i64")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(smith_normal_form(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_normal_form(&[vec![1, 2], vec![2, 4]]), vec![1]);
        assert_eq!(smith_normal_form(&[vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_normal_form(&[vec![4], vec![6]]), vec![2]);
    }
}
