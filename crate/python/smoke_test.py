#!/usr/bin/env python3
"""Build the extension module and exercise it once.

Run from anywhere: python3 python/smoke_test.py
"""
import math
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_module(dest):
    subprocess.run(
        ["cargo", "build", "--release", "-p", "pmi-subspace-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libsubspace_analogy.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(lib, dest / f"subspace_analogy{suffix}")


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        build_module(tmp)
        sys.path.insert(0, str(tmp))
        import subspace_analogy as sa

        assert sa.tokenize("The cat's hat.") == ["the", "cat", "s", "hat"]

        docs = [
            "the king rules the realm and the queen rules beside him",
            "a man walks and a woman walks beside him",
            "the king is a man and the queen is a woman",
        ] * 20
        space = sa.Space.from_documents(docs, vocab_size=100, window=3, smoothing=0.0)
        print(space)
        assert space.vocab_size > 0 and space.nnz > 0

        path = tmp / "toy.space"
        space.save(str(path))
        loaded = sa.Space.load(str(path))
        assert loaded.nnz == space.nnz
        assert loaded.value("king", "queen") == space.value("king", "queen")

        out = space.solve("king", "queen", "man", "woman", k1=10, k2=3)
        print("predicted", out["completion"]["predicted"], "matched", out["matched"])
        assert out["completion"]["predicted"] not in ("king", "queen", "man")

        try:
            space.solve("king", "queen", "man", "zebra")
        except sa.OutOfVocabularyError as e:
            print("oov ok:", e)
        else:
            raise AssertionError("expected OutOfVocabularyError")

        hist = space.dimension_histogram("rules", highlight=["king"])
        assert hist["dim_label"] == "rules"

        fig = sa.parallelogram_metrics(
            [4.133, 1.226, 1.528], [3.876, 0.868, 2.734], [0.924, 3.136, 1.760], [0.556, 2.642, 3.019]
        )
        assert math.isclose(fig["closure_abs"], 0.183, abs_tol=1e-3), fig
        assert 0.0 <= fig["flatness"] <= 1.0

        testset = tmp / "tiny.txt"
        testset.write_text(": toy\nking queen man woman\nking queen man zebra\n")
        report = space.evaluate(str(testset), k1=10, k2=3)
        assert report["total"] == report["oov_skipped"] + report["attempted"] == 2
        print("smoke test passed")


if __name__ == "__main__":
    main()
