//! Small standard complexes.

use crate::complex::{build_complex, SimplicialComplex};

pub fn point() -> SimplicialComplex {
    build_complex(&[vec![0]]).expect("valid")
}

/// Boundary of a triangle.
pub fn circle() -> SimplicialComplex {
    build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).expect("valid")
}

/// Boundary of a tetrahedron.
pub fn sphere() -> SimplicialComplex {
    build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).expect("valid")
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    build_complex(&tris).expect("valid")
}

/// The 6-vertex projective plane.
pub fn projective_plane() -> SimplicialComplex {
    build_complex(&RP2.iter().map(|t| t.to_vec()).collect::<Vec<_>>()).expect("valid")
}

const RP2: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 1, 5],
    [1, 2, 4],
    [1, 3, 4],
    [1, 3, 5],
    [2, 3, 5],
    [2, 4, 5],
];

/// `RP² ∨ S² ∨ S¹` glued at vertex 0: `H₁ = ℤ ⊕ ℤ/2`, `H₂ = ℤ`.
pub fn wedge() -> SimplicialComplex {
    let mut cells: Vec<Vec<usize>> = RP2.iter().map(|t| t.to_vec()).collect();
    cells.extend([vec![0, 6, 7], vec![0, 6, 8], vec![0, 7, 8], vec![6, 7, 8]]);
    cells.extend([vec![0, 9], vec![9, 10], vec![0, 10]]);
    build_complex(&cells).expect("valid")
}

/// Every named fixture.
pub fn all() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("point", point()),
        ("circle", circle()),
        ("sphere", sphere()),
        ("torus", torus()),
        ("rp2", projective_plane()),
        ("wedge", wedge()),
    ]
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, x)| x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    #[test]
    fn counts() {
        assert_eq!(torus().counts(), vec![7, 21, 14]);
        assert_eq!(projective_plane().counts(), vec![6, 15, 10]);
        assert_eq!(torus().euler_characteristic(), 0);
        assert_eq!(projective_plane().euler_characteristic(), 1);
    }

    #[test]
    fn low_homology_of_fixtures() {
        let cases = [
            ("torus", "Z^2", "Z"),
            ("rp2", "Z/2", "0"),
            ("wedge", "Z + Z/2", "Z"),
            ("sphere", "0", "Z"),
        ];
        for (name, h1, h2) in cases {
            let x = by_name(name).unwrap();
            assert_eq!(homology(&x, 1).unwrap().group().to_string(), h1, "{name}");
            assert_eq!(homology(&x, 2).unwrap().group().to_string(), h2, "{name}");
        }
    }
}
