from __future__ import annotations

import json
import tempfile

from hypothesis import given, settings, strategies as st

from cmotives.catalog import Catalog, bucket_slug, invariants
from cmotives.corpus import carlitz, drinfeld2, honda_tate_corpus, unipotent
from cmotives.hondatate import honda_tate_class
from cmotives.motive import direct_sum, motive_hash

CORPUS = honda_tate_corpus(3) + [unipotent(3), direct_sum(carlitz(3), carlitz(3))]


def test_layout_and_idempotent_add(tmp_path):
    cat = Catalog(tmp_path)
    C = carlitz(3)
    first = cat.add(C)
    again = cat.add(C)
    assert first == again
    mid = motive_hash(C)
    assert (tmp_path / "objects" / f"{mid}.json").exists()
    bucket, cid = first["class"]["bucket"], first["class"]["id"]
    doc = json.loads((tmp_path / "classes" / bucket / f"{cid}.json").read_text())
    assert doc["witnesses"] == [mid]
    assert bucket == bucket_slug(honda_tate_class(C).slope_key)
    assert set(json.loads((tmp_path / "index.json").read_text())) == {"objects", "buckets"}


def test_twists_share_a_class(tmp_path):
    cat = Catalog(tmp_path)
    a = cat.add(carlitz(3))
    b = cat.add(carlitz(3, c="-1"))
    assert a["class"] == b["class"]
    d = cat.add(drinfeld2(3, "1"))
    assert d["class"]["bucket"] != a["class"]["bucket"]


def test_non_semisimple_motives_have_no_class(tmp_path):
    entry = Catalog(tmp_path).add(unipotent(3))
    assert entry["class"] is None and entry["invariants"]["slope_key"] is None


def test_invariants_reproduce():
    M = drinfeld2(3, "1")
    assert invariants(M) == invariants(drinfeld2(3, "1"))


def test_check_detects_tampering(tmp_path):
    cat = Catalog(tmp_path)
    entry = cat.add(carlitz(3))
    path = cat.object_path(entry["id"])
    doc = json.loads(path.read_text())
    doc["invariants"]["dim_E"] = 7
    path.write_text(json.dumps(doc))
    report = cat.check()
    assert not report["ok"] and "stored invariants" in report["problems"][0]


@settings(max_examples=8)
@given(st.lists(st.integers(0, len(CORPUS) - 1), min_size=1, max_size=6))
def test_check_passes_after_arbitrary_adds(order):
    with tempfile.TemporaryDirectory() as root:
        cat = Catalog(root)
        for i in order:
            cat.add(CORPUS[i])
        report = cat.check()
        assert report["ok"], report["problems"]
        assert report["objects"] == len(set(order))
