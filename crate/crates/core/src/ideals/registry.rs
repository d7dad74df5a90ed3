use super::oracle::{full_oracle, linear_orders, triangle_free, IdealOracle};
use crate::ash::{standard_ash, AshOracle};
use crate::error::{Error, Result};
use crate::metric::{GridCondition, LineGridOracle, DEFAULT_LEVELS};
use crate::structures::Signature;

#[derive(Clone, Debug)]
pub struct RegistryOptions {
    /// Signature of the `all` oracle.
    pub signature: Signature,
    /// Threshold levels of the metric oracles; raised to the separation
    /// when that is larger.
    pub levels: usize,
}

impl Default for RegistryOptions {
    fn default() -> Self {
        Self {
            signature: Signature::binary(1),
            levels: DEFAULT_LEVELS,
        }
    }
}

fn numbers<T: std::str::FromStr>(token: &str, list: &str) -> Result<Vec<T>> {
    list.split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Input(format!("bad number `{p}` in `{token}`"))))
        .collect()
}

/// Built-in oracles: `all`, `triangle-free`, `linear-orders`,
/// `ash:<parts>,<part size>,<cap>`, `metric-line-t:<t>` and
/// `metric-omit:<d>,<d>,…`.
pub fn oracle_from_token(token: &str, opts: &RegistryOptions) -> Result<Box<dyn IdealOracle>> {
    let (head, arg) = match token.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (token, None),
    };
    let no_arg = |o: Box<dyn IdealOracle>| match arg {
        None => Ok(o),
        Some(_) => Err(Error::Input(format!("`{head}` takes no argument"))),
    };
    match (head, arg) {
        ("all", _) => no_arg(Box::new(full_oracle(opts.signature.clone()))),
        ("triangle-free", _) => no_arg(Box::new(triangle_free())),
        ("linear-orders", _) => no_arg(Box::new(linear_orders())),
        ("ash", Some(a)) => {
            let v: Vec<usize> = numbers(token, a)?;
            let [k, m, n] = v[..] else {
                return Err(Error::Input(format!("`{token}` needs three parameters")));
            };
            Ok(Box::new(AshOracle::new(token, standard_ash(k, m, n)?)))
        }
        ("metric-line-t", Some(a)) => {
            let t: i64 = a.trim().parse().map_err(|_| Error::Input(format!("bad separation in `{token}`")))?;
            let levels = opts.levels.max(usize::try_from(t).unwrap_or(0));
            Ok(Box::new(LineGridOracle::new(levels, GridCondition::MinDistance(t))?))
        }
        ("metric-omit", Some(a)) => {
            let list = if a.trim().is_empty() { Vec::new() } else { numbers(token, a)? };
            Ok(Box::new(LineGridOracle::new(opts.levels, GridCondition::Omit(list))?))
        }
        ("ash" | "metric-line-t" | "metric-omit", None) => Err(Error::Input(format!("`{head}` needs parameters after `:`"))),
        _ => Err(Error::Input(format!("unknown ideal `{token}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens() {
        let o = RegistryOptions::default();
        for t in ["all", "triangle-free", "linear-orders", "ash:3,4,1", "metric-line-t:2", "metric-omit:1,2"] {
            assert_eq!(oracle_from_token(t, &o).unwrap().name(), t);
        }
        assert_eq!(oracle_from_token("metric-line-t:9", &o).unwrap().signature().len(), 9);
        for bad in ["ash:1,2", "ash", "nope", "all:3", "metric-line-t:x", "metric-omit:0"] {
            assert!(oracle_from_token(bad, &o).is_err(), "{bad}");
        }
    }
}
