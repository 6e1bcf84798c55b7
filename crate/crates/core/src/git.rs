//! The real side: chambers of `cone(Sigma)`, quotient fans of the real
//! fibers, and the fiber fan `C_R` with its polyhedron `P_R`.

use crate::error::{Error, Result};
use crate::exact::{self, dot, Int, IntVec};
use crate::instance::ToricInstance;
use crate::polyhedral::{faces, is_common_refinement, minkowski_sum_all, normal_fan, Cone, Fan, Polyhedron};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

/// Largest multiple tried when pushing a chamber witness into `Sigma`.
const WITNESS_SEARCH_LIMIT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub cone: Cone,
    /// Indices into [`ChamberDecomposition::faces`] of the faces `F` of
    /// `cone(Omega)` with `witness ∈ pi(F)`.
    pub signature: Vec<usize>,
    /// A character of `Sigma` in the relative interior of the chamber.
    pub witness: IntVec,
    /// Number of vertices of `P^R_chi` for `chi` in the interior.
    pub vertex_count: usize,
}

#[derive(Debug, Clone)]
pub struct ChamberDecomposition {
    pub faces: Vec<Cone>,
    pub projected_faces: Vec<Cone>,
    pub fan: Fan,
    /// Maximal chambers, in the order of `fan.maximal_cones()`.
    pub chambers: Vec<Chamber>,
}

/// Where a character sits in the chamber decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChamberLocation {
    Interior(usize),
    /// The smallest cone of the decomposition containing the character.
    Wall(Cone),
}

/// Smallest positive multiple of `w` lying in `Sigma`.
pub(crate) fn multiple_in_sigma(inst: &ToricInstance, w: &[Int]) -> Result<IntVec> {
    if exact::is_zero(w) {
        return Ok(w.to_vec());
    }
    for k in 1..=WITNESS_SEARCH_LIMIT {
        let x = exact::scale(w, &Int::from(k));
        if inst.sigma_contains(&x)? {
            return Ok(x);
        }
    }
    Err(Error::invariant(format!(
        "no multiple k <= {WITNESS_SEARCH_LIMIT} of {} lies in sigma",
        exact::fmt_vec(w)
    )))
}

/// Splits `cells` by the hyperplane `h . x = 0`, keeping pieces of
/// dimension `target`.
fn split(cells: Vec<Cone>, h: &IntVec, target: usize) -> Vec<Cone> {
    let neg = exact::neg(h);
    let mut out = Vec::with_capacity(cells.len());
    for c in cells {
        let on_line = c.lineality().iter().all(|l| dot(h, l).is_zero());
        let pos = on_line && c.rays().iter().all(|r| !dot(h, r).is_negative());
        let negs = on_line && c.rays().iter().all(|r| !dot(h, r).is_positive());
        if pos || negs {
            out.push(c);
            continue;
        }
        for g in [h, &neg] {
            let piece = c.intersect(&Cone::from_inequalities(c.ambient_dim(), std::slice::from_ref(g), &[]));
            if piece.dim() == target {
                out.push(piece);
            }
        }
    }
    out
}

pub fn git_decomposition(inst: &ToricInstance) -> Result<ChamberDecomposition> {
    let sigma = inst.sigma_cone();
    let target = sigma.dim();
    let all_faces = faces(inst.omega_cone());
    let projected: Vec<Cone> = all_faces.par_iter().map(|f| f.image(inst.pi())).collect();

    // Every facet hyperplane of a full-dimensional projected face, plus the
    // span of each codimension-one projected face.
    let mut walls: Vec<IntVec> = Vec::new();
    for p in &projected {
        if p.dim() == target {
            walls.extend(p.facets().iter().cloned());
        } else if p.dim() + 1 == target {
            for e in p.equations() {
                if !exact::in_span(e, sigma.equations()) {
                    walls.push(e.clone());
                }
            }
        }
    }
    walls = walls.into_iter().map(exact::orient).collect();
    walls.sort();
    walls.dedup();

    let mut cells = vec![sigma.clone()];
    for h in &walls {
        cells = split(cells, h, target);
    }

    let full: Vec<usize> = (0..projected.len()).filter(|&i| projected[i].dim() == target).collect();
    let mut chambers: Vec<Cone> = cells
        .par_iter()
        .map(|c| {
            let x = c.interior_point();
            full.iter()
                .filter(|&&i| projected[i].contains(&x))
                .fold(sigma.clone(), |acc, &i| acc.intersect(&projected[i]))
        })
        .collect();
    chambers.sort();
    chambers.dedup();
    let fan = Fan::from_maximal_cones(inst.r(), chambers, sigma.clone())?;

    let decorated: Vec<Chamber> = fan
        .maximal_cones()
        .par_iter()
        .map(|c| decorate(inst, c, &projected))
        .collect::<Result<_>>()?;
    Ok(ChamberDecomposition {
        faces: all_faces,
        projected_faces: projected,
        fan,
        chambers: decorated,
    })
}

fn signature(x: &[Int], projected: &[Cone]) -> Vec<usize> {
    (0..projected.len()).filter(|&i| projected[i].contains(x)).collect()
}

fn decorate(inst: &ToricInstance, c: &Cone, projected: &[Cone]) -> Result<Chamber> {
    let interior = c.interior_point();
    let w = if exact::is_zero(&interior) {
        interior
    } else {
        exact::make_primitive(interior)
    };
    let witness = multiple_in_sigma(inst, &w)?;
    let sig = signature(&witness, projected);
    let vertex_count = inst.fiber_vertex_count(&witness)?;
    if let Some(first) = c.rays().first() {
        let other = multiple_in_sigma(inst, &exact::make_primitive(exact::add(&w, first)))?;
        if signature(&other, projected) != sig {
            return Err(Error::invariant(format!(
                "interior characters {} and {} of one chamber have different face signatures",
                exact::fmt_vec(&witness),
                exact::fmt_vec(&other)
            )));
        }
        if inst.fiber_vertex_count(&other)? != vertex_count {
            return Err(Error::invariant(format!(
                "interior characters {} and {} of one chamber have fibers with different vertex counts",
                exact::fmt_vec(&witness),
                exact::fmt_vec(&other)
            )));
        }
    }
    Ok(Chamber {
        cone: c.clone(),
        signature: sig,
        witness,
        vertex_count,
    })
}

impl ChamberDecomposition {
    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chamber(&self, i: usize) -> Result<&Chamber> {
        self.chambers.get(i).ok_or(Error::NoSuchChamber(i))
    }

    /// The chamber whose relative interior contains `chi`, or the smallest
    /// cone containing it when `chi` lies on a wall.
    pub fn chamber_of(&self, inst: &ToricInstance, chi: &[Int]) -> Result<ChamberLocation> {
        inst.check_character(chi)?;
        if !inst.sigma_cone().contains(chi) {
            return Err(Error::OutsideSigma {
                chi: exact::fmt_vec(chi),
            });
        }
        if let Some(i) = self.fan.locate_interior(chi) {
            return Ok(ChamberLocation::Interior(i));
        }
        let wall = self
            .fan
            .minimal_cone(chi)
            .ok_or_else(|| Error::invariant("chambers do not cover cone(sigma)"))?;
        Ok(ChamberLocation::Wall(wall))
    }

    pub fn chamber_vertex_count(&self, i: usize) -> Result<usize> {
        Ok(self.chamber(i)?.vertex_count)
    }
}

/// The normal fan of `P^R_chi` for `chi` in the relative interior of
/// `cone(Sigma)`.
pub fn git_quotient_fan(inst: &ToricInstance, chi: &[Int]) -> Result<Fan> {
    inst.check_character(chi)?;
    let sigma = inst.sigma_cone();
    if !sigma.contains(chi) {
        return Err(Error::OutsideSigma {
            chi: exact::fmt_vec(chi),
        });
    }
    if !sigma.relative_interior_contains(chi) {
        return Err(Error::BoundaryCharacter {
            chi: exact::fmt_vec(chi),
        });
    }
    normal_fan(&inst.fiber_polyhedron(chi)?)
}

/// The fiber fan and its polyhedron.
#[derive(Debug, Clone)]
pub struct RealFiberFan {
    pub fan: Fan,
    pub polyhedron: Polyhedron,
}

pub fn real_fiber_fan(inst: &ToricInstance, chambers: &ChamberDecomposition) -> Result<RealFiberFan> {
    let fibers: Vec<Polyhedron> = chambers
        .chambers
        .iter()
        .map(|c| inst.fiber_polyhedron(&c.witness))
        .collect::<Result<_>>()?;
    let p = minkowski_sum_all(&fibers)?;
    let fan = normal_fan(&p)?;
    let quotient: Vec<Fan> = chambers
        .chambers
        .iter()
        .map(|c| git_quotient_fan(inst, &c.witness))
        .collect::<Result<_>>()?;
    if !is_common_refinement(&fan, &quotient) {
        return Err(Error::invariant(
            "normal fan of P_R differs from the common refinement of the quotient fans",
        ));
    }
    Ok(RealFiberFan { fan, polyhedron: p })
}

/// Convenience: decomposition and fiber fan together.
pub fn real_side(inst: &ToricInstance) -> Result<(ChamberDecomposition, RealFiberFan)> {
    let d = git_decomposition(inst)?;
    let f = real_fiber_fan(inst, &d)?;
    Ok((d, f))
}
