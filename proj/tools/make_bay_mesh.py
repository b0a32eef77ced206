#!/usr/bin/env python3
"""Generates the coarse Bay of Bengal meshes shipped under data/.

The coastline is a hand-traced polyline over the box [0, 1051.4] x [0, 889.59]
(km): open sea at the bottom, Indian coast on the west, the delta on the
north, the Myanmar coast on the east, plus three islands. The open-sea
boundary carries three transmission segments:

  label 1: west box edge   (x = 0,      y <= 220)
  label 2: bottom box edge (y = ymin)
  label 3: east box edge   (x = 1051.4, y <= 150)

Coast and island edges carry label 0 (Dirichlet). The extended variant keeps
the identical coastline and moves the bottom open-sea boundary 100 km south
(ymin = -100), so initial data defined in these coordinates is unchanged.

Usage: python3 tools/make_bay_mesh.py [out_dir]
"""

import sys

import numpy as np
from scipy.spatial import Delaunay, cKDTree
from shapely.geometry import Point, Polygon

def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


WIDTH = 1051.4
TOP = 889.59
T1_MAX_Y = 220.0  # west transmission segment upper end
T3_MAX_Y = 150.0  # east transmission segment upper end
DS = 17.0         # target edge length, km

COAST = [  # east coast (from the T3 end) -> north delta -> west coast (to the T1 end)
    (WIDTH, T3_MAX_Y),
    (1020, 230), (985, 320), (950, 410), (930, 500), (915, 590),
    (890, 660), (850, 720), (805, 775), (760, 820), (720, 855), (680, 880),
    (640, TOP), (600, 875), (585, 840), (565, 870), (530, 885), (490, 875),
    (450, 855), (400, 820), (350, 770), (300, 710), (255, 640), (215, 560),
    (180, 480), (150, 400), (115, 330), (80, 280), (40, 245),
    (0.0, T1_MAX_Y),
]

ISLANDS = [  # (center, mean radius)
    ((620.0, 760.0), 28.0),
    ((520.0, 790.0), 22.0),
    ((880.0, 420.0), 26.0),
]


def resample(points, ds):
    """Resamples a polyline at spacing ~ds, keeping the end points."""
    points = np.asarray(points, dtype=float)
    seglen = np.linalg.norm(np.diff(points, axis=0), axis=1)
    total = seglen.sum()
    n = max(2, int(round(total / ds)))
    targets = np.linspace(0.0, total, n + 1)
    cum = np.concatenate([[0.0], np.cumsum(seglen)])
    out = []
    for t in targets:
        k = min(np.searchsorted(cum, t, side="right") - 1, len(seglen) - 1)
        w = (t - cum[k]) / seglen[k] if seglen[k] > 0 else 0.0
        out.append(points[k] * (1 - w) + points[k + 1] * w)
    return np.asarray(out)


def island_polygon(center, radius, rng, n_min=12):
    n = max(n_min, int(round(2 * np.pi * radius / DS)) + 2)
    angles = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    radii = radius * (1.0 + 0.18 * np.sin(3 * angles + rng.uniform(0, 2 * np.pi))
                      + 0.08 * rng.standard_normal(n))
    pts = np.stack([center[0] + radii * np.cos(angles),
                    center[1] + radii * np.sin(angles)], axis=1)
    return pts


def build_outer_chain(ymin):
    """Closed CCW chain with per-vertex labels for the edge leaving it."""
    chain, labels = [], []

    def add(points, label):
        for p in points:
            chain.append((float(p[0]), float(p[1])))
            labels.append(label)

    bottom = resample([(0.0, ymin), (WIDTH, ymin)], DS)
    add(bottom[:-1], 2)
    east = resample([(WIDTH, ymin), (WIDTH, T3_MAX_Y)], DS)
    add(east[:-1], 3)
    coast = resample(COAST, DS)
    add(coast[:-1], 0)
    west = resample([(0.0, T1_MAX_Y), (0.0, ymin)], DS)
    add(west[:-1], 1)
    return np.asarray(chain), labels


def hex_lattice(ymin, rng):
    xs = np.arange(DS * 0.5, WIDTH, DS)
    rows = []
    y = ymin + DS * 0.5
    row = 0
    while y < TOP:
        offset = 0.5 * DS if row % 2 else 0.0
        for x in xs:
            rows.append((x + offset, y))
        y += DS * np.sqrt(3) / 2
        row += 1
    pts = np.asarray(rows)
    return pts + 0.1 * DS * rng.uniform(-1.0, 1.0, size=pts.shape)


def generate(ymin):
    rng = np.random.default_rng(20230817)
    chain, chain_labels = build_outer_chain(ymin)
    outer = Polygon(chain)
    assert outer.is_valid, "outer polygon must be simple"

    islands = []
    for center, radius in ISLANDS:
        poly = island_polygon(center, radius, rng)
        p = Polygon(poly)
        assert p.is_valid and outer.contains(p)
        islands.append(poly)

    boundary_pts = np.concatenate([chain] + islands)
    tree = cKDTree(boundary_pts)

    interior = hex_lattice(ymin, rng)
    keep = []
    for p in interior:
        if tree.query(p)[0] < 0.62 * DS:
            continue
        pt = Point(p)
        if not outer.contains(pt):
            continue
        if any(Polygon(poly).buffer(0.4 * DS).contains(pt) for poly in islands):
            continue
        keep.append(p)
    interior = np.asarray(keep)

    n_fixed = len(boundary_pts)
    pts = np.concatenate([boundary_pts, interior])

    water = Polygon(chain, [poly[::-1] for poly in islands])

    def water_triangles(tri):
        keep = []
        for simplex in tri.simplices:
            a, b, c3 = pts_cur[simplex]
            if abs(cross2(b - a, c3 - a)) < 1e-6 * DS * DS:
                continue
            c = pts_cur[simplex].mean(axis=0)
            if water.contains(Point(c)):
                keep.append(simplex)
        return np.asarray(keep)

    pts_cur = pts.copy()
    for _ in range(6):  # Lloyd-style smoothing of the interior points
        tri = Delaunay(pts_cur)
        simplices = water_triangles(tri)
        acc = np.zeros_like(pts_cur)
        cnt = np.zeros(len(pts_cur))
        for s in simplices:
            c = pts_cur[s].mean(axis=0)
            for v in s:
                acc[v] += c
                cnt[v] += 1
        move = cnt > 0
        move[:n_fixed] = False
        pts_cur[move] = acc[move] / cnt[move, None]

    tri = Delaunay(pts_cur)
    simplices = water_triangles(tri)

    # largest connected component over shared edges
    from collections import defaultdict
    edge_map = defaultdict(list)
    for i, s in enumerate(simplices):
        for k in range(3):
            e = tuple(sorted((s[k], s[(k + 1) % 3])))
            edge_map[e].append(i)
    seen = np.full(len(simplices), -1)
    comp = 0
    for seed in range(len(simplices)):
        if seen[seed] >= 0:
            continue
        stack = [seed]
        seen[seed] = comp
        while stack:
            i = stack.pop()
            for k in range(3):
                e = tuple(sorted((simplices[i][k], simplices[i][(k + 1) % 3])))
                for j in edge_map[e]:
                    if seen[j] < 0:
                        seen[j] = comp
                        stack.append(j)
        comp += 1
    sizes = np.bincount(seen)
    simplices = simplices[seen == np.argmax(sizes)]

    # drop unused vertices, orient CCW
    used = np.unique(simplices)
    remap = -np.ones(len(pts_cur), dtype=int)
    remap[used] = np.arange(len(used))
    verts = pts_cur[used]
    tris = remap[simplices]
    for t in tris:
        a, b, c = verts[t[0]], verts[t[1]], verts[t[2]]
        if cross2(b - a, c - a) < 0:
            t[1], t[2] = t[2], t[1]

    # boundary edges = edges with exactly one adjacent triangle
    edge_count = defaultdict(int)
    for t in tris:
        for k in range(3):
            e = tuple(sorted((t[k], t[(k + 1) % 3])))
            edge_count[e] += 1
    boundary = [e for e, c in edge_count.items() if c == 1]

    def edge_label(e):
        a, b = verts[e[0]], verts[e[1]]
        tol = 1e-6
        if abs(a[1] - ymin) < tol and abs(b[1] - ymin) < tol:
            return 2
        if abs(a[0]) < tol and abs(b[0]) < tol and a[1] <= T1_MAX_Y + tol and b[1] <= T1_MAX_Y + tol:
            return 1
        if (abs(a[0] - WIDTH) < tol and abs(b[0] - WIDTH) < tol
                and a[1] <= T3_MAX_Y + tol and b[1] <= T3_MAX_Y + tol):
            return 3
        return 0

    labeled = [(e[0], e[1], edge_label(e)) for e in boundary]

    areas = [0.5 * cross2(verts[t[1]] - verts[t[0]], verts[t[2]] - verts[t[0]]) for t in tris]
    assert min(areas) > 0
    def min_angle(t):
        P = [verts[t[k]] for k in range(3)]
        ang = []
        for k in range(3):
            u = P[(k + 1) % 3] - P[k]
            v = P[(k + 2) % 3] - P[k]
            ang.append(np.degrees(np.arccos(np.clip(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)), -1, 1))))
        return min(ang)
    worst_angle = min(min_angle(t) for t in tris)
    print(f"  worst min-angle: {worst_angle:.2f} deg")
    print(f"ymin={ymin}: {len(verts)} vertices, {len(tris)} triangles, "
          f"{len(labeled)} boundary edges "
          f"(labels: {sorted(set(l for _, _, l in labeled))}), "
          f"min area {min(areas):.2f}, max area {max(areas):.2f} km^2")
    for lbl in (1, 2, 3):
        n = sum(1 for _, _, l in labeled if l == lbl)
        assert n >= 3, f"transmission segment {lbl} too short ({n} edges)"
    return verts, tris, labeled


def write_smf(path, verts, tris, boundary, note):
    with open(path, "w") as f:
        f.write("# %s\n" % note)
        f.write("# generated by tools/make_bay_mesh.py\n")
        f.write("smf 1\n")
        f.write(f"vertices {len(verts)}\n")
        for v in verts:
            f.write("%.17g %.17g\n" % (v[0], v[1]))
        f.write(f"triangles {len(tris)}\n")
        for t in tris:
            f.write("%d %d %d\n" % (t[0], t[1], t[2]))
        f.write(f"boundary_edges {len(boundary)}\n")
        for a, b, l in boundary:
            f.write("%d %d %d\n" % (a, b, l))


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data"
    verts, tris, boundary = generate(0.0)
    write_smf(f"{out_dir}/bay.smf", verts, tris, boundary,
              "coarse Bay of Bengal mesh (km); transmission labels 1..3 on the open sea")
    verts, tris, boundary = generate(-100.0)
    write_smf(f"{out_dir}/bay_extended.smf", verts, tris, boundary,
              "coarse Bay of Bengal mesh, open-sea boundary extended 100 km south")


if __name__ == "__main__":
    main()
