//! Fixed 16x16 patterns and their SSIM as computed by scikit-image.
#![allow(dead_code)]

use glyphcast::GrayImage;

pub fn pattern_a() -> GrayImage {
    GrayImage::from_fn(16, 16, |x, y| ((x * 17 + y * 31) % 256) as u8).unwrap()
}

pub fn pattern_b() -> GrayImage {
    GrayImage::from_fn(16, 16, |x, y| (((x * x + 3 * y) * 7) % 256) as u8).unwrap()
}

#[rustfmt::skip]
pub const PATTERN_C: [u8; 256] = [
    0, 36, 68, 91, 104, 109, 108, 105, 106, 114, 132, 159, 193, 230, 255, 255,
    31, 66, 97, 120, 133, 139, 138, 137, 138, 147, 165, 191, 224, 255, 38, 65,
    62, 94, 122, 144, 159, 166, 168, 170, 174, 184, 202, 227, 1, 34, 65, 90,
    93, 120, 145, 166, 181, 191, 198, 204, 213, 225, 0, 9, 35, 63, 89, 112,
    124, 146, 166, 184, 201, 215, 227, 240, 0, 12, 29, 48, 69, 91, 112, 132,
    155, 170, 186, 202, 220, 238, 0, 19, 38, 56, 73, 89, 104, 119, 134, 150,
    186, 195, 206, 220, 239, 5, 30, 55, 79, 99, 116, 129, 139, 147, 157, 169,
    217, 221, 228, 0, 4, 29, 59, 90, 118, 141, 157, 167, 173, 176, 181, 190,
    248, 0, 0, 8, 28, 56, 89, 123, 155, 180, 196, 204, 206, 205, 207, 214,
    23, 21, 24, 34, 55, 84, 119, 156, 189, 215, 231, 238, 238, 235, 0, 0,
    54, 52, 55, 66, 86, 115, 150, 187, 220, 245, 255, 255, 13, 11, 10, 16,
    85, 85, 90, 101, 122, 149, 182, 216, 247, 255, 255, 40, 43, 43, 44, 52,
    116, 120, 128, 141, 160, 185, 214, 244, 255, 39, 55, 65, 71, 75, 81, 90,
    147, 157, 169, 183, 202, 223, 247, 15, 38, 58, 75, 88, 99, 109, 119, 132,
    178, 194, 210, 227, 244, 6, 24, 42, 59, 77, 94, 110, 127, 143, 159, 175,
    209, 231, 253, 15, 31, 45, 57, 68, 80, 95, 112, 132, 154, 176, 198, 219,
];

pub const SSIM_A_B: f64 = 0.06836676312384173;
pub const SSIM_A_C: f64 = 0.9662199784448917;

pub fn pattern_c() -> GrayImage {
    GrayImage::new(16, 16, PATTERN_C.to_vec()).unwrap()
}
