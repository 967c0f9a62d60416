//! Numeric list arguments: `start:stop:step` ranges or comma lists.

use std::str::FromStr;

/// Values `start + k·step` for `k = 0, 1, …` strictly before `stop`; a value
/// within `1e-9·|step|` of `stop` counts as reaching it and is dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples(pub Vec<f64>);

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

impl FromStr for Samples {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [start, stop, step] => {
                let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
                if step == 0.0 || (stop - start) * step <= 0.0 {
                    return Err(format!("range {s:?} is empty or has the wrong step sign"));
                }
                let count = ((stop - start) / step - 1e-9).ceil();
                if count > 1e7 {
                    return Err(format!("range {s:?} has too many points"));
                }
                Ok(Samples((0..count as usize).map(|k| start + k as f64 * step).collect()))
            }
            [_] => s.split(',').map(number).collect::<Result<_, _>>().map(Samples),
            _ => Err(format!("expected start:stop:step or a comma list, got {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_exclude_stop() {
        assert_eq!("0:1:0.25".parse::<Samples>().unwrap().0, vec![0.0, 0.25, 0.5, 0.75]);
        assert_eq!("0:10:0.05".parse::<Samples>().unwrap().0.len(), 200);
        assert_eq!("0:0.3:0.1".parse::<Samples>().unwrap().0.len(), 3);
        assert_eq!("1,1.5,2".parse::<Samples>().unwrap().0, vec![1.0, 1.5, 2.0]);
        assert_eq!("3".parse::<Samples>().unwrap().0, vec![3.0]);
        assert!("1:0:0.1".parse::<Samples>().is_err());
        assert!("0:1:0".parse::<Samples>().is_err());
        assert!("a,b".parse::<Samples>().is_err());
        assert!("nan".parse::<Samples>().is_err());
    }
}
