#!/usr/bin/env python3
# Regenerates the bundled luma test corpus under tests/data from the sample
# images shipped with scikit-image.
import pathlib

import numpy as np
import skimage.data as data
from skimage.transform import resize

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

# (name, loader, crop (y0, y1, x0, x1) or None, target max side)
SOURCES = [
    ("astronaut", data.astronaut, None, 200),
    ("brick", data.brick, None, 180),
    ("camera", data.camera, None, 256),
    ("cat", data.cat, None, 203),
    ("cell", data.cell, None, 190),
    ("chelsea", data.chelsea, (20, 280, 60, 380), 185),
    ("clock", data.clock, None, 197),
    ("coffee", data.coffee, None, 210),
    ("coins", data.coins, None, 201),
    ("grass", data.grass, None, 168),
    ("gravel", data.gravel, None, 175),
    ("hubble", data.hubble_deep_field, (0, 500, 0, 500), 180),
    ("ihc", data.immunohistochemistry, None, 183),
    ("microaneurysms", data.microaneurysms, None, 102),
    ("moon", data.moon, None, 192),
    ("page", data.page, None, 211),
    ("retina", data.retina, (300, 1100, 300, 1100), 187),
    ("retina_detail", data.retina, (500, 800, 600, 900), 150),
    ("rocket", data.rocket, None, 220),
    ("text", data.text, None, 224),
]


def to_luma(img):
    img = np.asarray(img)
    if img.ndim == 3:
        rgb = img[..., :3].astype(np.float64)
        img = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return img.astype(np.float64)


def write_pgm(path, plane):
    h, w = plane.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (w, h))
        f.write(plane.astype(np.uint8).tobytes())


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, loader, crop, side in SOURCES:
        img = to_luma(loader())
        if crop is not None:
            y0, y1, x0, x1 = crop
            img = img[y0:y1, x0:x1]
        scale = side / max(img.shape)
        if name == "camera":
            shape = (side, side)
        else:
            shape = (max(1, round(img.shape[0] * scale)),
                     max(1, round(img.shape[1] * scale)))
        small = resize(img, shape, anti_aliasing=True, preserve_range=True)
        plane = np.clip(np.floor(small + 0.5), 0, 255)
        write_pgm(OUT / f"{name}.pgm", plane)
        print(name, plane.shape[::-1])


if __name__ == "__main__":
    main()
