"""Extended McMullen job: every element up to Frobenius norm 256.

Skipped unless VEECH_EXTENDED=1; it takes tens of minutes.
"""

import os
import time

import pytest

from veech.driver import compute, in_subgroup
from test_acceptance import _pp_sides

pytestmark = pytest.mark.skipif(os.environ.get("VEECH_EXTENDED") != "1",
                                reason="set VEECH_EXTENDED=1 to run the norm 256 job")


def test_mcmullen_norm_256(mcm):
    start = time.time()
    K = mcm.field
    _, _, sides = _pp_sides(K, K("1+sqrt3"))
    r = compute(mcm, K(256 * 256), no_shift=True)
    outside = [A for A, _ in r.elements if not in_subgroup(A, sides)]
    # the element list has one matrix per +-pair
    print("McMullen norm <= 256: %d SL elements, %d outside <-I, P1, P2>, %.0fs"
          % (2 * len(r.elements), len(outside), time.time() - start))
    assert not outside
    assert 2 * len(r.elements) == 25010
