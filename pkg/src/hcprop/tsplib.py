"""TSPLIB reader, EUC_2D only."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path


class TsplibError(ValueError):
    pass


def euc2d_distance(a: tuple[float, float], b: tuple[float, float]) -> int:
    """TSPLIB EUC_2D distance: Euclidean distance rounded to nearest integer."""
    return int(math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) + 0.5)


@dataclass(frozen=True)
class TspInstance:
    name: str
    coords: tuple[tuple[float, float], ...]
    weights: tuple[tuple[int, ...], ...] = field(repr=False)
    edges_by_weight: tuple[tuple[int, int, int], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def from_coords(cls, coords, name: str = "anon") -> TspInstance:
        coords = tuple((float(x), float(y)) for x, y in coords)
        n = len(coords)
        w = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                w[i][j] = w[j][i] = euc2d_distance(coords[i], coords[j])
        edges = sorted(((i, j, w[i][j]) for i in range(n) for j in range(i + 1, n)),
                       key=lambda e: (e[2], e[0], e[1]))
        return cls(name, coords, tuple(map(tuple, w)), tuple(edges))

    def tour_weight(self, tour) -> int:
        """Weight of a closed tour given as a node sequence."""
        w = self.weights
        return sum(w[tour[k - 1]][tour[k]] for k in range(len(tour)))


_HEADER_KEYS = {"NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE",
                "CAPACITY", "DISPLAY_DATA_TYPE", "NODE_COORD_TYPE"}


def parse_instance(text: str) -> TspInstance:
    header: dict[str, str] = {}
    coords: dict[int, tuple[float, float]] = {}
    in_coords = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        if in_coords:
            parts = line.split()
            if len(parts) != 3:
                if parts[0].rstrip(":").isupper() and not parts[0].isdigit():
                    in_coords = False   # next section
                else:
                    raise TsplibError(f"line {lineno}: expected 'id x y', got {line!r}")
            if in_coords:
                try:
                    nid, x, y = int(parts[0]), float(parts[1]), float(parts[2])
                except ValueError:
                    raise TsplibError(f"line {lineno}: bad node line {line!r}") from None
                if nid in coords:
                    raise TsplibError(f"line {lineno}: duplicate node id {nid}")
                coords[nid] = (x, y)
                continue
        if line == "NODE_COORD_SECTION":
            in_coords = True
            continue
        if line.endswith("_SECTION"):
            raise TsplibError(f"line {lineno}: unsupported section {line}")
        if ":" not in line:
            raise TsplibError(f"line {lineno}: malformed header line {line!r}")
        key, _, value = line.partition(":")
        key = key.strip().upper()
        if key not in _HEADER_KEYS:
            raise TsplibError(f"line {lineno}: unknown header field {key!r}")
        header[key] = value.strip()

    wtype = header.get("EDGE_WEIGHT_TYPE")
    if wtype is None:
        raise TsplibError("missing EDGE_WEIGHT_TYPE")
    if wtype != "EUC_2D":
        raise TsplibError(f"unsupported EDGE_WEIGHT_TYPE {wtype!r} (only EUC_2D)")
    if "DIMENSION" not in header:
        raise TsplibError("missing DIMENSION")
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise TsplibError(f"bad DIMENSION {header['DIMENSION']!r}") from None
    missing = [i for i in range(1, n + 1) if i not in coords]
    if missing or len(coords) != n:
        raise TsplibError(f"node ids must be 1..{n}; missing {missing[:5]}, got {len(coords)} nodes")
    return TspInstance.from_coords([coords[i] for i in range(1, n + 1)],
                                   name=header.get("NAME", "unnamed"))


def load_instance(path: str | Path) -> TspInstance:
    return parse_instance(Path(path).read_text())


def format_instance(inst: TspInstance) -> str:
    lines = [f"NAME: {inst.name}", "TYPE: TSP", f"DIMENSION: {inst.n}",
             "EDGE_WEIGHT_TYPE: EUC_2D", "NODE_COORD_SECTION"]
    lines += [f"{i + 1} {x:g} {y:g}" for i, (x, y) in enumerate(inst.coords)]
    lines.append("EOF")
    return "\n".join(lines) + "\n"


def random_instance(n: int, seed: int, size: int = 1000) -> TspInstance:
    """Random Euclidean instance with distinct integer coordinates."""
    rng = random.Random(seed)
    pts: set[tuple[int, int]] = set()
    while len(pts) < n:
        pts.add((rng.randrange(size), rng.randrange(size)))
    return TspInstance.from_coords(sorted(pts, key=lambda p: rng.random()),
                                   name=f"rand{n}_{seed}")
