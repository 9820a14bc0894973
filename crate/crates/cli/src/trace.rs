use andrekit::phi::{phi_inverse_traced, phi_set_traced, Step};
use andrekit::Permutation;

use crate::Exit;

fn parse(text: &str) -> Result<Permutation, Exit> {
    text.parse().map_err(|e| Exit::usage(format!("{e}")))
}

fn parse_letters(text: &str) -> Result<Vec<usize>, Exit> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Exit::usage(format!("not a letter: {s:?}"))))
        .collect()
}

fn lines(steps: &[Step]) -> Vec<String> {
    steps.iter().map(ToString::to_string).collect()
}

pub fn forward(sigma: &str, s: &str) -> Result<String, Exit> {
    let sigma = parse(sigma)?;
    let letters = parse_letters(s)?;
    let (image, steps) = phi_set_traced(&sigma, &letters).map_err(|e| Exit::usage(e.to_string()))?;
    let mut out = lines(&steps);
    out.push(format!("result: {image}"));
    Ok(out.join("\n"))
}

pub fn inverse(tau: &str) -> Result<String, Exit> {
    let tau = parse(tau)?;
    let (sigma, subset, steps) = phi_inverse_traced(&tau).map_err(|e| Exit::usage(e.to_string()))?;
    let letters: Vec<String> = subset.letters.iter().map(ToString::to_string).collect();
    let mut out = lines(&steps);
    out.push(format!("sigma: {sigma}"));
    out.push(format!("S: {{{}}}", letters.join(",")));
    Ok(out.join("\n"))
}
