"""Regenerate the packaged fixtures from scratch.

FIX-K4 and FIX-BOWTIE come from exhaustive embedding searches, FIX-MIN9 is
the unique 9-vertex polyhedral quadrangulation reachable from FIX-K4, and
the pattern fixtures are the unique embeddings with their stated face
structure.  Writes into src/o1ppg/fixtures/.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from o1ppg import srsio
from o1ppg.generator import exhaustive_small_search, grow_quadrangulations
from o1ppg.model import validate_quadrangulation
from o1ppg.structures import build_patterns
from o1ppg.surface import EmbeddedGraph

OUT = pathlib.Path(__file__).resolve().parents[1] / "src/o1ppg/fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    k4_edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    (k4,) = exhaustive_small_search(
        4, k4_edges, lambda g: all(f.length == 4 for f in g.faces))
    srsio.dump(k4.srs, OUT / "FIX-K4.srs",
               header="FIX-K4: the unique quadrangular embedding of K4 in "
                      "the projective plane (three 4-cycle faces)")

    bow_edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
    (bow,) = exhaustive_small_search(
        5, bow_edges,
        lambda g: sorted(f.length for f in g.faces) == [6, 6])
    srsio.dump(bow.srs, OUT / "FIX-BOWTIE.srs",
               header="FIX-BOWTIE: two essential triangles sharing vertex 0;"
                      " two pinched hexagonal faces")

    corpus = grow_quadrangulations([k4], n_max=9)
    min9 = []
    for key, srs in corpus[9]:
        g = EmbeddedGraph(srs)
        try:
            validate_quadrangulation(g)
        except Exception:
            continue
        min9.append((key, g))
    assert len(min9) == 1, f"expected a unique 9-vertex polyhedral member, " \
                           f"got {len(min9)}"
    srsio.dump(min9[0][1].srs, OUT / "FIX-MIN9.srs",
               header="FIX-MIN9: the minimum-order polyhedral quadrangulation"
                      " of the projective plane in the generated corpus")

    for pid, pat in sorted(build_patterns().items()):
        srsio.dump(pat.embedding.srs, OUT / f"pattern_{pid}.srs",
                   header=f"pattern {pid}: fixed embedded subgraph fixture; "
                          "see the .roles sidecar for matching roles")
        lines = []
        if pat.gray:
            lines.append("gray " + " ".join(map(str, sorted(pat.gray))))
        if pat.odd_faces:
            lines.append("oddface " + " ".join(map(str, pat.odd_faces)))
        (OUT / f"pattern_{pid}.roles").write_text(
            "\n".join(lines) + ("\n" if lines else ""))
    print(f"wrote fixtures into {OUT}")


if __name__ == "__main__":
    main()
