//! Integer pixel geometry shared by layout, filling and rendering.

use core::fmt;

/// Axis-aligned rectangle in page pixels, top-left origin.
///
/// A rect covers the half-open pixel span `[x, x + w) × [y, y + h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl Rect {
    pub const fn new(x: u32, y: u32, w: u32, h: u32) -> Self {
        Self { x, y, w, h }
    }

    /// Exclusive right edge.
    #[inline]
    pub const fn right(&self) -> u32 {
        self.x + self.w
    }

    /// Exclusive bottom edge.
    #[inline]
    pub const fn bottom(&self) -> u32 {
        self.y + self.h
    }

    #[inline]
    pub const fn area(&self) -> u64 {
        self.w as u64 * self.h as u64
    }

    #[inline]
    pub const fn is_empty(&self) -> bool {
        self.w == 0 || self.h == 0
    }

    /// `other` lies entirely inside `self` (edges may touch).
    pub fn contains(&self, other: &Rect) -> bool {
        other.x >= self.x
            && other.y >= self.y
            && other.right() <= self.right()
            && other.bottom() <= self.bottom()
    }

    pub fn contains_point(&self, px: u32, py: u32) -> bool {
        px >= self.x && px < self.right() && py >= self.y && py < self.bottom()
    }

    /// True when the two rects share at least one pixel.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x < other.right()
            && other.x < self.right()
            && self.y < other.bottom()
            && other.y < self.bottom()
    }

    /// Smallest rect covering both.
    pub fn union(&self, other: &Rect) -> Rect {
        let x = self.x.min(other.x);
        let y = self.y.min(other.y);
        let r = self.right().max(other.right());
        let b = self.bottom().max(other.bottom());
        Rect::new(x, y, r - x, b - y)
    }

    /// Union of an iterator of rects, `None` when it is empty.
    pub fn union_all<'a, I>(rects: I) -> Option<Rect>
    where
        I: IntoIterator<Item = &'a Rect>,
    {
        rects.into_iter().fold(None, |acc, r| match acc {
            None => Some(*r),
            Some(u) => Some(u.union(r)),
        })
    }

    /// Grow by `by` pixels on every side, clamped at zero.
    pub fn dilate(&self, by: u32) -> Rect {
        let x = self.x.saturating_sub(by);
        let y = self.y.saturating_sub(by);
        Rect::new(x, y, self.right() + by - x, self.bottom() + by - y)
    }

    /// Shrink by `by` pixels on every side; `None` if nothing would remain.
    pub fn inset(&self, by: u32) -> Option<Rect> {
        if self.w <= 2 * by || self.h <= 2 * by {
            return None;
        }
        Some(Rect::new(self.x + by, self.y + by, self.w - 2 * by, self.h - 2 * by))
    }

    /// `[x, y, w, h]`, the serialized bbox convention.
    pub const fn to_xywh(&self) -> [u32; 4] {
        [self.x, self.y, self.w, self.h]
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.x, self.y, self.w, self.h)
    }
}

/// Signed bounding box used while measuring ink that may fall left of or
/// above the pen origin before it is validated against a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct IBox {
    pub x0: i32,
    pub y0: i32,
    pub x1: i32,
    pub y1: i32,
}

impl IBox {
    pub fn union(&self, o: &IBox) -> IBox {
        IBox {
            x0: self.x0.min(o.x0),
            y0: self.y0.min(o.y0),
            x1: self.x1.max(o.x1),
            y1: self.y1.max(o.y1),
        }
    }

    pub fn translate(&self, dx: i32, dy: i32) -> IBox {
        IBox {
            x0: self.x0 + dx,
            y0: self.y0 + dy,
            x1: self.x1 + dx,
            y1: self.y1 + dy,
        }
    }

    /// Converts to a page rect if it lies fully inside `bounds`.
    pub fn to_rect_within(&self, bounds: &Rect) -> Option<Rect> {
        if self.x0 < bounds.x as i32
            || self.y0 < bounds.y as i32
            || self.x1 > bounds.right() as i32
            || self.y1 > bounds.bottom() as i32
            || self.x1 <= self.x0
            || self.y1 <= self.y0
        {
            return None;
        }
        Some(Rect::new(
            self.x0 as u32,
            self.y0 as u32,
            (self.x1 - self.x0) as u32,
            (self.y1 - self.y0) as u32,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_contains() {
        let a = Rect::new(10, 10, 5, 5);
        let b = Rect::new(20, 0, 2, 30);
        let u = a.union(&b);
        assert_eq!(u, Rect::new(10, 0, 12, 30));
        assert!(u.contains(&a) && u.contains(&b));
        assert_eq!(Rect::union_all([a, b].iter()), Some(u));
        assert_eq!(Rect::union_all([].iter()), None);
    }

    #[test]
    fn touching_rects_do_not_overlap() {
        let a = Rect::new(0, 0, 10, 10);
        assert!(!a.overlaps(&Rect::new(10, 0, 10, 10)));
        assert!(a.overlaps(&Rect::new(9, 9, 10, 10)));
    }

    #[test]
    fn dilate_clamps_at_origin() {
        assert_eq!(Rect::new(0, 3, 4, 4).dilate(1), Rect::new(0, 2, 5, 6));
        assert_eq!(Rect::new(5, 5, 4, 4).inset(2), None);
    }
}
