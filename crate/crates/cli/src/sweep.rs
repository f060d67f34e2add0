//! Sweep grammar: `a:b` inclusive ranges, `odd:a:b` and `even:a:b` filtered
//! ranges, and comma-separated lists mixing both.

pub fn parse_int_sweep(spec: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty item in sweep '{spec}'"));
        }
        let parts: Vec<&str> = item.split(':').collect();
        let int = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("'{s}' is not a non-negative integer in sweep '{spec}'"))
        };
        let range = |a: &str, b: &str| -> Result<std::ops::RangeInclusive<usize>, String> {
            let (a, b) = (int(a)?, int(b)?);
            if a > b {
                return Err(format!("range '{item}' runs backwards"));
            }
            Ok(a..=b)
        };
        match parts.as_slice() {
            [v] => out.push(int(v)?),
            [a, b] => out.extend(range(a, b)?),
            ["odd", a, b] => out.extend(range(a, b)?.filter(|v| v % 2 == 1)),
            ["even", a, b] => out.extend(range(a, b)?.filter(|v| v % 2 == 0)),
            _ => return Err(format!("cannot parse sweep item '{item}'")),
        }
    }
    if out.is_empty() {
        return Err(format!("sweep '{spec}' selects no values"));
    }
    Ok(out)
}

pub fn parse_float_list(spec: &str) -> Result<Vec<f64>, String> {
    let out = spec
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{s}' is not a finite number"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_int_sweep("3:6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_int_sweep("odd:9:15").unwrap(), vec![9, 11, 13, 15]);
        assert_eq!(parse_int_sweep("even:9:15").unwrap(), vec![10, 12, 14]);
        assert_eq!(parse_int_sweep("25,49, 101").unwrap(), vec![25, 49, 101]);
        assert_eq!(parse_int_sweep("2,5:7").unwrap(), vec![2, 5, 6, 7]);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a", "5:3", "odd:4:4", "1:2:3", "1,,2", "-1"] {
            assert!(parse_int_sweep(bad).is_err(), "{bad}");
        }
        assert!(parse_float_list("0,x").is_err());
        assert!(parse_float_list("nan").is_err());
        assert_eq!(parse_float_list("0, 0.5,1.8").unwrap(), vec![0.0, 0.5, 1.8]);
    }
}
