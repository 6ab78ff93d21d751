"""On-disk catalog of motives grouped into Honda-Tate classes.

Layout under the root directory:
    objects/<motive id>.json               motive, invariants, provenance
    classes/<bucket>/<class id>.json       slope key, pairs, witnesses
    index.json                             objects and buckets
Mutations hold a lock file; reads do not.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from filelock import FileLock

from . import __version__
from .hondatate import HondaTateClass, classes_equal, honda_tate_class
from .isogeny import DEFAULT_DEGREE_CAP, hom_space, is_semisimple
from .motive import Motive, char_data, motive_from_json, motive_hash, motive_to_json
from .algebra.printing import to_str
from .realization import zeta

ENV_VAR = "CMOTIVES_CATALOG"
DEFAULT_ROOT = "cmotives-catalog"


def default_root() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_ROOT))


def dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(path: Path, doc):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(dump(doc), encoding="utf-8")
    tmp.replace(path)


def _read(path: Path):
    return json.loads(path.read_text(encoding="utf-8"))


def bucket_slug(slope_key: str) -> str:
    return hashlib.sha256(slope_key.encode()).hexdigest()[:16]


def invariants(M: Motive) -> dict:
    cd = char_data(M)
    ss, _ = is_semisimple(M)
    z = zeta(M)
    out = {
        "chi": to_str(cd.chi),
        "mu": to_str(cd.mu),
        "semisimple": ss,
        "dim_E": hom_space(M, M).dim,
        "zeta": z.to_json(),
        "slope_key": None,
    }
    if ss:
        out["slope_key"] = honda_tate_class(M).slope_key
    return out


class Catalog:
    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_root()
        self.lock = FileLock(str(self.root / ".lock"))

    @property
    def index_path(self) -> Path:
        return self.root / "index.json"

    def index(self) -> dict:
        if self.index_path.exists():
            return _read(self.index_path)
        return {"objects": {}, "buckets": {}}

    def object_path(self, mid: str) -> Path:
        return self.root / "objects" / f"{mid}.json"

    def class_path(self, bucket: str, cid: str) -> Path:
        return self.root / "classes" / bucket / f"{cid}.json"

    def load_object(self, mid: str) -> dict:
        return _read(self.object_path(mid))

    def add(self, M: Motive) -> dict:
        """Store M and link it to its class; idempotent."""
        self.root.mkdir(parents=True, exist_ok=True)
        mid = motive_hash(M)
        inv = invariants(M)
        entry = {
            "id": mid,
            "motive": motive_to_json(M),
            "invariants": inv,
            "provenance": {"version": __version__, "seed": 0,
                           "bounds": [DEFAULT_DEGREE_CAP], "precision": None},
            "class": None,
        }
        with self.lock:
            idx = self.index()
            if inv["semisimple"]:
                ht = honda_tate_class(M)
                bucket = bucket_slug(ht.slope_key)
                cid = self._find_class(bucket, idx, ht)
                if cid is None:
                    cid = hashlib.sha256((bucket + mid).encode()).hexdigest()[:16]
                    doc = ht.to_json()
                    doc["witnesses"] = [mid]
                    doc["id"] = cid
                    _write(self.class_path(bucket, cid), doc)
                    b = idx["buckets"].setdefault(bucket, {"slope_key": ht.slope_key, "classes": []})
                    b["classes"].append(cid)
                else:
                    path = self.class_path(bucket, cid)
                    doc = _read(path)
                    if mid not in doc["witnesses"]:
                        doc["witnesses"].append(mid)
                        doc["witnesses"].sort()
                        _write(path, doc)
                entry["class"] = {"bucket": bucket, "id": cid}
            _write(self.object_path(mid), entry)
            idx["objects"][mid] = {"name": M.name, "class": entry["class"]}
            _write(self.index_path, idx)
        return entry

    def _find_class(self, bucket: str, idx: dict, ht: HondaTateClass):
        for cid in idx["buckets"].get(bucket, {}).get("classes", []):
            doc = _read(self.class_path(bucket, cid))
            rep = motive_from_json(self.load_object(doc["witnesses"][0])["motive"])
            if _same_class(honda_tate_class(rep), ht):
                return cid
        return None

    def buckets(self) -> dict:
        idx = self.index()
        out = {}
        for bucket, b in sorted(idx["buckets"].items()):
            out[bucket] = {"slope_key": b["slope_key"], "classes": {}}
            for cid in b["classes"]:
                doc = _read(self.class_path(bucket, cid))
                out[bucket]["classes"][cid] = {"pairs": doc["pairs"], "witnesses": doc["witnesses"]}
        return out

    def check(self) -> dict:
        """Re-verify stored invariants, bucket keys and intra-bucket equivalences."""
        idx = self.index()
        problems = []
        classes = {}
        for mid in sorted(idx["objects"]):
            entry = self.load_object(mid)
            M = motive_from_json(entry["motive"])
            if motive_hash(M) != mid:
                problems.append(f"{mid}: content hash mismatch")
            if invariants(M) != entry["invariants"]:
                problems.append(f"{mid}: stored invariants do not reproduce")
            if entry["class"]:
                b, cid = entry["class"]["bucket"], entry["class"]["id"]
                ht = honda_tate_class(M)
                if bucket_slug(ht.slope_key) != b:
                    problems.append(f"{mid}: bucket key disagrees with the recomputed slope key")
                classes.setdefault((b, cid), []).append(ht)
        for bucket, b in idx["buckets"].items():
            reps = []
            for cid in b["classes"]:
                members = classes.get((bucket, cid), [])
                if not members:
                    problems.append(f"{bucket}/{cid}: class without members")
                    continue
                for other in members[1:]:
                    if not _same_class(members[0], other):
                        problems.append(f"{bucket}/{cid}: members are not equivalent")
                for rep in reps:
                    if _same_class(rep, members[0]):
                        problems.append(f"{bucket}/{cid}: duplicates another class in the bucket")
                reps.append(members[0])
        return {"ok": not problems, "problems": problems, "objects": len(idx["objects"])}


def _same_class(a: HondaTateClass, b: HondaTateClass) -> bool:
    return a.slope_key == b.slope_key and classes_equal(a, b)
