//! Closed orientable surfaces as genus/scar bookkeeping.
//!
//! A surface is a finite multiset of closed pieces, each carrying a genus and
//! a multiset of scars left behind by earlier compressions. Scars have no
//! Euler weight; they are markings that record which disk produced them.

use std::fmt;

use thiserror::Error;

/// Marking left on a surface piece by compressing along a disk.
/// Carries the id of the disk whose compression produced it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScarTag(pub String);

impl ScarTag {
    pub fn new(disk_id: impl Into<String>) -> Self {
        ScarTag(disk_id.into())
    }

    pub fn disk_id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ScarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One closed orientable component: a genus plus the scars it carries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfacePiece {
    pub genus: u32,
    scars: Vec<ScarTag>, // kept sorted so pieces compare as multisets
}

impl SurfacePiece {
    pub fn new(genus: u32, scars: impl IntoIterator<Item = ScarTag>) -> Self {
        let mut scars: Vec<ScarTag> = scars.into_iter().collect();
        scars.sort();
        SurfacePiece { genus, scars }
    }

    pub fn closed(genus: u32) -> Self {
        SurfacePiece::new(genus, [])
    }

    pub fn scars(&self) -> &[ScarTag] {
        &self.scars
    }

    pub fn euler_char(&self) -> i64 {
        2 - 2 * i64::from(self.genus)
    }

    /// Number of scars from the given disk.
    pub fn scar_count(&self, disk_id: &str) -> usize {
        self.scars.iter().filter(|s| s.disk_id() == disk_id).count()
    }

    fn with_scar(&self, tag: &ScarTag, copies: usize) -> Vec<ScarTag> {
        let mut scars = self.scars.clone();
        scars.extend(std::iter::repeat_n(tag.clone(), copies));
        scars
    }
}

impl PartialOrd for SurfacePiece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SurfacePiece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.genus, &self.scars).cmp(&(other.genus, &other.scars))
    }
}

impl fmt::Display for SurfacePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{{", self.genus)?;
        for (i, s) in self.scars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// A possibly disconnected closed surface. Pieces are unordered; the internal
/// list is kept sorted so two surfaces are equal exactly when their piece
/// multisets are.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Surface {
    pieces: Vec<SurfacePiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("CannotCompressSphere: piece {piece} has genus 0")]
    CannotCompressSphere { piece: usize },
    #[error("BadSplit: {reason}")]
    BadSplit { reason: String },
    #[error("no piece at index {0}")]
    NoSuchPiece(usize),
}

impl Surface {
    pub fn new(pieces: impl IntoIterator<Item = SurfacePiece>) -> Self {
        let mut pieces: Vec<SurfacePiece> = pieces.into_iter().collect();
        pieces.sort();
        Surface { pieces }
    }

    pub fn empty() -> Self {
        Surface { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[SurfacePiece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn euler_char(&self) -> i64 {
        self.pieces.iter().map(SurfacePiece::euler_char).sum()
    }

    /// Compress the indexed piece along a nonseparating curve: genus drops by
    /// one and the piece gains two scars of the given tag.
    pub fn compress_nonsep(
        &self,
        piece_index: usize,
        tag: ScarTag,
    ) -> Result<Surface, SurfaceError> {
        let piece = self
            .pieces
            .get(piece_index)
            .ok_or(SurfaceError::NoSuchPiece(piece_index))?;
        if piece.genus == 0 {
            return Err(SurfaceError::CannotCompressSphere { piece: piece_index });
        }
        let mut pieces = self.pieces.clone();
        pieces[piece_index] = SurfacePiece::new(piece.genus - 1, piece.with_scar(&tag, 2));
        Ok(Surface::new(pieces))
    }

    /// Compress the indexed piece along a separating curve, splitting it into
    /// two pieces with the declared genera and scar partition. Each new piece
    /// gains one scar of the given tag.
    pub fn compress_sep(
        &self,
        piece_index: usize,
        tag: ScarTag,
        genus_a: u32,
        scars_a: impl IntoIterator<Item = ScarTag>,
        genus_b: u32,
        scars_b: impl IntoIterator<Item = ScarTag>,
    ) -> Result<Surface, SurfaceError> {
        let piece = self
            .pieces
            .get(piece_index)
            .ok_or(SurfaceError::NoSuchPiece(piece_index))?;
        if genus_a + genus_b != piece.genus {
            return Err(SurfaceError::BadSplit {
                reason: format!(
                    "genus split {genus_a}+{genus_b} != {} of target piece",
                    piece.genus
                ),
            });
        }
        let mut scars_a: Vec<ScarTag> = scars_a.into_iter().collect();
        let mut scars_b: Vec<ScarTag> = scars_b.into_iter().collect();
        scars_a.sort();
        scars_b.sort();
        let mut rejoined: Vec<ScarTag> = scars_a.iter().chain(scars_b.iter()).cloned().collect();
        rejoined.sort();
        if rejoined != piece.scars {
            return Err(SurfaceError::BadSplit {
                reason: "scar partition does not rejoin to the target piece".into(),
            });
        }
        scars_a.push(tag.clone());
        scars_b.push(tag);
        let mut pieces = self.pieces.clone();
        pieces.remove(piece_index);
        pieces.push(SurfacePiece::new(genus_a, scars_a));
        pieces.push(SurfacePiece::new(genus_b, scars_b));
        Ok(Surface::new(pieces))
    }

    pub fn disjoint_union(&self, other: &Surface) -> Surface {
        Surface::new(self.pieces.iter().chain(other.pieces.iter()).cloned())
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}
