"""Procedural world: latent development field, roads, tiles, and targets.

The world is a square grid of cells. Each cell carries a smooth latent
"development level" plus a second moisture/terrain field; settlements are
drawn where development is high and connected by a road network. The five
continuous targets and every rendered tile are fixed noisy monotone
functions of these layers, so the whole dataset is a pure function of
(grid_size, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.sparse.csgraph import minimum_spanning_tree

from ..errors import OutOfGrid

BAND_NAMES = (
    "blue", "green", "red", "nir", "swir1", "swir2",
    "thermal1", "thermal2", "pan",
)

TASK_NAMES = ("awi", "nightlights", "population", "road_distance", "landcover")

# Band 'thermal1' tracks settlement intensity most strongly; it plays the
# role of the luminosity proxy in downstream baselines.
NIGHTLIGHT_PROXY_BAND = "thermal1"

# Target-model constants, calibrated once on seeded worlds and frozen:
# nightlights are a skewed exponential of development (rank-preserving,
# Pearson-attenuating), the wealth index mixes both latent fields with
# moderate noise so that corr(nightlights, awi) lands near 0.55.
_NIGHTLIGHT_GAIN = 1.3
_NIGHTLIGHT_NOISE = 0.05
_AWI_MOISTURE_MIX = 0.25
_AWI_NOISE = 0.25
_POP_GAIN = 0.9
_POP_MOISTURE_MIX = 0.2
_POP_NOISE = 0.1
_LANDCOVER_DEV_MIX = 0.3
_LANDCOVER_NOISE = 0.15

# Per-band response to (development, moisture, on-road); rows follow BAND_NAMES.
_BAND_DEV = np.array([0.30, 0.10, 0.35, -0.25, 0.15, 0.25, 0.80, 0.65, 0.40])
_BAND_MOIST = np.array([-0.10, 0.40, -0.20, 0.60, -0.45, -0.35, -0.15, -0.10, 0.20])
_BAND_ROAD = np.array([0.15, 0.10, 0.25, -0.10, 0.20, 0.20, 0.10, 0.10, 0.30])
_BAND_BASE = np.array([-0.2, -0.1, -0.15, 0.1, 0.0, -0.05, -0.3, -0.25, 0.0])
_BAND_TEXTURE = np.array([0.35, 0.35, 0.35, 0.40, 0.30, 0.30, 0.15, 0.15, 0.45])
_PIXEL_NOISE = 0.06


@dataclass
class World:
    """All latent layers plus the derived per-cell continuous targets."""

    grid_size: int
    seed: int
    development: np.ndarray        # [0, 1]
    moisture: np.ndarray           # [0, 1]
    dev_z: np.ndarray              # standardized development
    moist_z: np.ndarray            # standardized moisture
    settlement_mask: np.ndarray    # bool
    road_mask: np.ndarray          # bool
    targets: dict[str, np.ndarray]

    def check_location(self, location) -> tuple[int, int]:
        row, col = int(location[0]), int(location[1])
        if not (0 <= row < self.grid_size and 0 <= col < self.grid_size):
            raise OutOfGrid(f"location {location} outside {self.grid_size}x{self.grid_size} grid")
        return row, col


def _smooth_field(rng: np.random.Generator, n: int, sigma: float) -> np.ndarray:
    """Gaussian-filtered white noise, min-max normalized to [0, 1]."""
    noise = rng.standard_normal((n, n))
    field = ndimage.gaussian_filter(noise, sigma=sigma, mode="wrap")
    lo, hi = field.min(), field.max()
    return (field - lo) / (hi - lo)


def _standardize(field: np.ndarray) -> np.ndarray:
    return (field - field.mean()) / field.std()


def _bresenham(r0: int, c0: int, r1: int, c1: int):
    """Integer cells on the segment from (r0,c0) to (r1,c1), inclusive."""
    dr, dc = abs(r1 - r0), abs(c1 - c0)
    sr = 1 if r1 >= r0 else -1
    sc = 1 if c1 >= c0 else -1
    err = dr - dc
    r, c = r0, c0
    while True:
        yield r, c
        if r == r1 and c == c1:
            return
        e2 = 2 * err
        if e2 > -dc:
            err -= dc
            r += sr
        if e2 < dr:
            err += dr
            c += sc


def _build_roads(rng: np.random.Generator, dev: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Settlements sampled where development is high, joined by an MST of roads."""
    n = dev.shape[0]
    n_sites = max(3, (n * n) // 400)
    weights = dev.ravel() ** 6
    weights = weights / weights.sum()
    flat = rng.choice(n * n, size=n_sites, replace=False, p=weights)
    sites = np.stack([flat // n, flat % n], axis=1)

    settlement = np.zeros((n, n), dtype=bool)
    settlement[sites[:, 0], sites[:, 1]] = True

    diff = sites[:, None, :] - sites[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    mst = minimum_spanning_tree(dist).toarray()

    road = np.zeros((n, n), dtype=bool)
    for i, j in zip(*np.nonzero(mst)):
        for r, c in _bresenham(*sites[i], *sites[j]):
            road[r, c] = True
    return settlement, road


def generate_world(grid_size: int, seed: int) -> World:
    """Deterministically build all world layers and per-cell targets."""
    if grid_size < 8:
        raise ValueError(f"grid_size must be >= 8, got {grid_size}")
    rng = np.random.default_rng([seed, 0x57])  # domain-separated from tile streams
    dev = _smooth_field(rng, grid_size, sigma=grid_size / 12)
    moist = _smooth_field(rng, grid_size, sigma=grid_size / 8)
    dev_z = _standardize(dev)
    moist_z = _standardize(moist)
    settlement, road = _build_roads(rng, dev)
    road_distance = ndimage.distance_transform_edt(~road)

    eta = {name: rng.standard_normal((grid_size, grid_size)) for name in
           ("nightlights", "population", "landcover", "awi")}

    targets = {
        "nightlights": np.exp(_NIGHTLIGHT_GAIN * (dev_z + _NIGHTLIGHT_NOISE * eta["nightlights"])),
        "population": np.exp(_POP_GAIN * (dev_z + _POP_MOISTURE_MIX * moist_z
                                          + _POP_NOISE * eta["population"])),
        "road_distance": road_distance,
        "landcover": moist_z + _LANDCOVER_DEV_MIX * dev_z + _LANDCOVER_NOISE * eta["landcover"],
        "awi": dev_z + _AWI_MOISTURE_MIX * moist_z + _AWI_NOISE * eta["awi"],
    }
    return World(
        grid_size=grid_size,
        seed=seed,
        development=dev,
        moisture=moist,
        dev_z=dev_z,
        moist_z=moist_z,
        settlement_mask=settlement,
        road_mask=road,
        targets=targets,
    )


def derive_targets(world: World, location) -> dict[str, float]:
    """The five continuous targets at one grid cell."""
    row, col = world.check_location(location)
    return {name: float(world.targets[name][row, col]) for name in TASK_NAMES}


def render_tile(world: World, location, tile_size: int = 64, bands: int = 9) -> np.ndarray:
    """Render one tile_size x tile_size x bands float32 tile in [-1, 1].

    Per-band statistics respond to the local development/moisture levels;
    the per-tile random stream is keyed on (world seed, row, col) so tiles
    render identically regardless of call order. `bands=3` is exactly the
    first three channels of the 9-band render.
    """
    if tile_size < 16:
        raise ValueError(f"tile_size must be >= 16, got {tile_size}")
    if bands not in (3, 9):
        raise ValueError(f"bands must be 3 or 9, got {bands}")
    row, col = world.check_location(location)
    rng = np.random.default_rng([world.seed, row, col])

    texture = ndimage.gaussian_filter(
        rng.standard_normal((tile_size, tile_size)), sigma=tile_size / 12, mode="wrap"
    )
    texture = texture / max(texture.std(), 1e-9)

    d = world.dev_z[row, col]
    m = world.moist_z[row, col]
    on_road = float(world.road_mask[row, col])

    # Always draw all 9 bands' noise so the RGB slice is unchanged by `bands`.
    noise = rng.standard_normal((tile_size, tile_size, 9))

    fields = (
        _BAND_BASE
        + _BAND_DEV * d
        + _BAND_MOIST * m
        + _BAND_ROAD * on_road
    )[None, None, :] + _BAND_TEXTURE[None, None, :] * texture[:, :, None] \
        + _PIXEL_NOISE * noise

    if on_road:
        # A stripe across the tile marks the road itself.
        angle = rng.uniform(0, np.pi)
        rr, cc = np.mgrid[0:tile_size, 0:tile_size]
        axis = (rr - tile_size / 2) * np.cos(angle) + (cc - tile_size / 2) * np.sin(angle)
        stripe = np.exp(-(axis ** 2) / (2 * (tile_size / 24) ** 2))
        fields += 0.6 * stripe[:, :, None] * _BAND_ROAD[None, None, :]

    tile = np.tanh(fields).astype(np.float32)
    return tile[:, :, :bands]
