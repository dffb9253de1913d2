#!/usr/bin/env python3
"""Regenerates data/corpus (color) and data/gray (gray-only) test images.

Synthetic images are iso-luminant: every region has the same L* to within
8-bit quantization, so all of their contrast lives in a* and b*. The photos
are public-domain samples shipped with scikit-image, downscaled.
"""
import argparse
import itertools
import pathlib

import numpy as np
from PIL import Image
from skimage import data
from skimage.color import rgb2lab

SIZE = 128


def all_srgb_lab():
    levels = np.arange(256, dtype=np.uint8)
    rgb = np.array(list(itertools.product(levels[::3], repeat=3)), dtype=np.uint8)
    lab = rgb2lab(rgb.reshape(-1, 1, 3) / 255.0).reshape(-1, 3)
    return rgb, lab


def nearest_color(rgb, lab, target):
    """8-bit sRGB colour closest to target Lab, with L* weighted heavily."""
    d = 400.0 * (lab[:, 0] - target[0]) ** 2 + (lab[:, 1] - target[1]) ** 2 + (lab[:, 2] - target[2]) ** 2
    best = rgb[np.argmin(d)].astype(int)
    # Refine on the full 8-bit grid around the coarse optimum.
    offsets = np.array(list(itertools.product(range(-3, 4), repeat=3)))
    local = np.clip(best + offsets, 0, 255).astype(np.uint8)
    local_lab = rgb2lab(local.reshape(-1, 1, 3) / 255.0).reshape(-1, 3)
    d = 400.0 * (local_lab[:, 0] - target[0]) ** 2 + (local_lab[:, 1] - target[1]) ** 2 + (local_lab[:, 2] - target[2]) ** 2
    return local[np.argmin(d)]


def render(mask, c0, c1):
    img = np.empty(mask.shape + (3,), dtype=np.uint8)
    img[~mask] = c0
    img[mask] = c1
    return img


def masks():
    y, x = np.mgrid[0:SIZE, 0:SIZE]
    c = (SIZE - 1) / 2.0
    r = np.hypot(x - c, y - c)
    yield "halves_h", x >= SIZE // 2
    yield "halves_v", y >= SIZE // 2
    yield "disk", r < SIZE * 0.3
    yield "stripes", (x // 24) % 2 == 1
    yield "checker", ((x // 32) + (y // 32)) % 2 == 1
    yield "rings", (r // 20) % 2 == 1
    yield "squares", ((np.abs(x - 40) < 16) & (np.abs(y - 40) < 16)) | ((np.abs(x - 88) < 24) & (np.abs(y - 84) < 20))
    yield "diagonal", x + y > SIZE


# (L, a, b) pairs whose a* and b* differences share a sign.
PAIRS = [
    ((55, 35, 35), (55, -30, -30)),
    ((60, 45, 20), (60, -25, -30)),
    ((50, 20, 45), (50, -20, -35)),
    ((65, 30, 50), (65, -35, -10)),
    ((55, 50, 10), (55, -20, -40)),
    ((45, 25, 30), (45, -25, -30)),
    ((60, 15, 45), (60, -30, -20)),
    ((55, 40, 40), (55, -35, -35)),
]


def photos():
    yield "astronaut", data.astronaut(), "png"
    yield "coffee", data.coffee(), "png"
    yield "chelsea", data.chelsea(), "png"
    yield "rocket", data.rocket(), "jpg"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--root", default=pathlib.Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    corpus = pathlib.Path(args.root) / "corpus"
    iso = pathlib.Path(args.root) / "isoluminant"
    gray = pathlib.Path(args.root) / "gray"
    for d in (corpus, iso, gray):
        d.mkdir(parents=True, exist_ok=True)

    rgb, lab = all_srgb_lab()
    for (name, mask), (t0, t1) in zip(masks(), PAIRS):
        c0 = nearest_color(rgb, lab, t0)
        c1 = nearest_color(rgb, lab, t1)
        img = Image.fromarray(render(mask, c0, c1))
        img.save(iso / f"iso_{name}.png")
        img.save(corpus / f"iso_{name}.png")

    for name, pixels, ext in photos():
        img = Image.fromarray(pixels).convert("RGB")
        img.thumbnail((SIZE, SIZE), Image.LANCZOS)
        img.save(corpus / f"photo_{name}.{ext}", quality=92)

    cam = Image.fromarray(data.camera()).resize((96, 96), Image.LANCZOS).convert("RGB")
    cam.save(gray / "camera.png")
    perf = pathlib.Path(args.root) / "perf"
    perf.mkdir(parents=True, exist_ok=True)
    Image.fromarray(data.astronaut()).convert("RGB").save(perf / "astronaut_512.jpg", quality=90)

    fixtures = pathlib.Path(args.root) / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)
    rgba = np.array([[[255, 0, 0, 255], [0, 0, 255, 0], [0, 255, 0, 128]]], dtype=np.uint8)
    Image.fromarray(rgba, "RGBA").save(fixtures / "alpha.png")
    Image.fromarray(np.array([[0, 128, 255]], dtype=np.uint8), "L").save(fixtures / "gray8.png")
    Image.fromarray(np.array([[[10, 20, 30], [200, 100, 50]]], dtype=np.uint8)).convert(
        "P", palette=Image.ADAPTIVE, colors=2).save(fixtures / "palette.png")
    Image.fromarray(np.full((4, 6, 3), (200, 30, 90), dtype=np.uint8)).save(
        fixtures / "solid.jpg", quality=100, subsampling=0)
    (fixtures / "not_an_image.png").write_bytes(b"this is not a png file")

    y, x = np.mgrid[0:64, 0:80]
    ramp = np.repeat(((x * 255) // 79).astype(np.uint8)[..., None], 3, axis=2)
    Image.fromarray(ramp).save(gray / "ramp.png")


if __name__ == "__main__":
    main()
