/// Twelve significant digits, plain notation where it stays readable.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=11).contains(&mag) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig(5.774_541_900_715_235), "5.77454190072");
        assert_eq!(sig(0.6 / 0.4), "1.5");
        assert_eq!(sig(-0.405_465_108_108_164_4), "-0.405465108108");
        assert_eq!(sig(1234.5), "1234.5");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(3.2e-11), "3.20000000000e-11");
    }
}
