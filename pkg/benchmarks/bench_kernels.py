'''Times the compiled kernels against the pure-Python fallbacks.

The kernel implementation is chosen at import time, so each variant runs
in a fresh subprocess with MONOFLAG_PURE set accordingly.  Two stages
are timed: canonical enumeration of G(6,7) and classification of every
anchored subset pair over all hosts of G(4,7).  Usage:

    python3 benchmarks/bench_kernels.py
'''

import json
import os
import subprocess
import sys

SNIPPET = '''
import json, time
from monoflag.kernels import IMPLEMENTATION, classify_pairs_l7
from monoflag.sdp import _classifier_tables
from monoflag.wordgraphs import enumerate_word_graphs, graph_of_word

t0 = time.perf_counter()
classes = len(enumerate_word_graphs(6, 7))
enum_s = time.perf_counter() - t0

graphs = enumerate_word_graphs(4, 7)
map27, sig1, sig3, _ = _classifier_tables(4)
t0 = time.perf_counter()
emitted = 0
for g in graphs:
    emitted += len(classify_pairs_l7(bytes(g.colors), map27, sig1, sig3))
classify_s = time.perf_counter() - t0
print(json.dumps({"impl": IMPLEMENTATION, "classes": classes,
                  "enum_s": enum_s, "hosts": len(graphs),
                  "emitted": emitted, "classify_s": classify_s}))
'''


def run(pure: bool) -> dict:
    env = dict(os.environ)
    env.pop('MONOFLAG_CACHE_DIR', None)
    env['MONOFLAG_PURE'] = '1' if pure else '0'
    out = subprocess.run([sys.executable, '-c', SNIPPET], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    pure = run(pure=True)
    fast = run(pure=False)
    for r in (pure, fast):
        print('%-9s enumerate G(6,7) -> %d classes in %6.2fs'
              % (r['impl'], r['classes'], r['enum_s']))
    for r in (pure, fast):
        print('%-9s classify %d hosts of G(4,7) -> %d codes in %6.2fs'
              % (r['impl'], r['hosts'], r['emitted'], r['classify_s']))
    if (pure['classes'], pure['emitted']) != (fast['classes'],
                                              fast['emitted']):
        raise SystemExit('implementations disagree')
    if fast['impl'] == 'compiled':
        print('speedup: enumerate %.1fx, classify %.1fx'
              % (pure['enum_s'] / fast['enum_s'],
                 pure['classify_s'] / fast['classify_s']))
    else:
        print('compiled kernels unavailable; timed the pure path twice')


if __name__ == '__main__':
    main()
