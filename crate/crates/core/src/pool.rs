//! Figure image pool and aspect-preserving placement.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::geom::Rect;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageAsset {
    /// Where the asset came from; informational only.
    pub name: String,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImagePool {
    pub assets: Vec<ImageAsset>,
}

/// An asset scaled into a target rect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedImage {
    pub asset: usize,
    pub rect: Rect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PoolError {
    #[error("image pool is empty")]
    EmptyPool,
}

/// Largest rect with the asset's aspect ratio that fits `target`, centered.
pub fn fit_centered(asset_w: u32, asset_h: u32, target: &Rect) -> Rect {
    let (aw, ah) = (asset_w as u64, asset_h as u64);
    let (tw, th) = (target.w as u64, target.h as u64);
    let (w, h) = if aw * th >= ah * tw {
        // asset is relatively wider: width-bound
        let h = (ah * tw * 2 + aw) / (aw * 2);
        (tw, h.clamp(1, th))
    } else {
        let w = (aw * th * 2 + ah) / (ah * 2);
        (w.clamp(1, tw), th)
    };
    let (w, h) = (w as u32, h as u32);
    Rect::new(target.x + (target.w - w) / 2, target.y + (target.h - h) / 2, w, h)
}

/// Picks an asset uniformly and fits it into `target`.
pub fn sample_image<R: Rng + ?Sized>(pool: &ImagePool, rng: &mut R, target: &Rect) -> Result<PlacedImage, PoolError> {
    if pool.assets.is_empty() {
        return Err(PoolError::EmptyPool);
    }
    let asset = rng.gen_range(0..pool.assets.len());
    let a = &pool.assets[asset];
    Ok(PlacedImage {
        asset,
        rect: fit_centered(a.width, a.height, target),
    })
}
