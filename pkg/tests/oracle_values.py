"""Reference numbers frozen from independent 40-digit mpmath evaluation.

Regenerate with::

    import mpmath as mp
    mp.mp.dps = 40
    h = lambda x: -x * mp.log(x, 2) - (1 - x) * mp.log(1 - x, 2)
    h(mp.mpf("0.6")), h(mp.mpf("0.2")), h((1 + mp.sqrt(mp.mpf("0.5"))) / 2)
"""

H_06 = 0.970950594454668639
H_02 = 0.72192809488736234787
# h((1 + sqrt(1/2)) / 2): eGHZ at 4 l1^2 l3^2 = 1/2, and maximal slice at l2 = 1/2
H_TANGLE_HALF = 0.60087603669285610084
# 0.5 * h(0.6): generalized W with squared coefficients (0.5, 0.3, 0.2)
GW_532_MCP = 0.4854752972273343195
