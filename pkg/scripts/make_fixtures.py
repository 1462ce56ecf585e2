#!/usr/bin/env python3
"""Write ready-to-use JSON fixtures for the command-line interface.

Produces the standard dim-3 algebra (d = diag(1,2,3), weight -5), its adjoint
action as an explicit file, and a handful of operator/tensor files that the
README walks through.
"""

import argparse
from pathlib import Path

from md3lie import documents as docs
from md3lie.corpus import example_md
from md3lie.exactnum import Matrix
from md3lie.multilin import SkewTernaryTensor
from md3lie.structures import adjoint_representation


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="fixtures", help="output directory")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    md = example_md()
    files = {
        "example_dim3.json": docs.algebra_to_doc(md),
        "adjoint.json": docs.representation_to_doc(adjoint_representation(md)),
        "op_e13.json": docs.matrix_to_doc(
            Matrix(3, 3, [0, 0, 1, 0, 0, 0, 0, 0, 0])),
        "op_diag123.json": docs.matrix_to_doc(Matrix.diagonal([1, 2, 3])),
        "op_diag11m1.json": docs.matrix_to_doc(Matrix.diagonal([1, 1, -1])),
        "g_diag01m1.json": docs.matrix_to_doc(Matrix.diagonal([0, 1, -1])),
        "zeros3.json": docs.matrix_to_doc(Matrix.zeros(3, 3)),
        "zero_tensor3.json": docs.tensor_to_doc(SkewTernaryTensor.zero(3, 3)),
        "section_canonical.json": docs.matrix_to_doc(Matrix.block(
            [[Matrix.identity(3)], [Matrix.zeros(3, 3)]])),
    }
    for name, doc in files.items():
        docs.dump_json(str(out / name), doc)
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
