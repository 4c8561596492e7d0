use crate::error::{Error, Result};
use crate::field::Prime;
use crate::weeding::SectionIndex;

/// Base-p digits of a decimal string, least significant first, with no
/// high-order zeros. `"0"` gives the empty list.
///
/// Works by repeated short division of the decimal digit string, so there is
/// no limit on the size of `n`.
pub fn to_digits_lsd(n: &str, p: Prime) -> Result<Vec<SectionIndex>> {
    if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedNumber(n.to_string()));
    }
    let mut dec: Vec<u32> = n
        .bytes()
        .map(|b| (b - b'0') as u32)
        .skip_while(|&d| d == 0)
        .collect();
    let base = p.get();
    let mut out = Vec::new();
    while !dec.is_empty() {
        let mut rem = 0u32;
        for d in dec.iter_mut() {
            let cur = rem * 10 + *d;
            *d = cur / base;
            rem = cur % base;
        }
        out.push(SectionIndex::new(rem as usize, p)?);
        let lead = dec.iter().take_while(|&&d| d == 0).count();
        dec.drain(..lead);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn digits(n: &str, p: u64) -> Result<Vec<usize>> {
        Ok(to_digits_lsd(n, Prime::new(p).unwrap())?
            .into_iter()
            .map(|d| d.get())
            .collect())
    }

    #[test]
    fn examples() {
        assert_eq!(digits("6", 2).unwrap(), vec![0, 1, 1]);
        assert_eq!(digits("13", 3).unwrap(), vec![1, 1, 1]);
        assert_eq!(digits("0", 5).unwrap(), Vec::<usize>::new());
        assert_eq!(digits("000", 5).unwrap(), Vec::<usize>::new());
        assert_eq!(digits("0010", 3).unwrap(), vec![1, 0, 1]);
        assert_eq!(digits("12a", 3), Err(Error::MalformedNumber("12a".into())));
        assert!(digits("", 3).is_err());
        assert!(digits("-5", 3).is_err());
        assert!(digits(" 5", 3).is_err());
    }

    #[test]
    fn large_prime() {
        assert_eq!(digits("65521", 65521).unwrap(), vec![0, 1]);
        assert_eq!(digits("4293001441", 65521).unwrap(), vec![0, 0, 1]);
    }

    proptest! {
        #[test]
        fn matches_u128_conversion(n in any::<u128>(), pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 65521][pi];
            let got = digits(&n.to_string(), p).unwrap();
            let mut want = Vec::new();
            let mut m = n;
            while m > 0 {
                want.push((m % p as u128) as usize);
                m /= p as u128;
            }
            prop_assert_eq!(got, want);
        }
    }
}
