# Copyright 2026 The nftsignal Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes granger_statsmodels.csv from series produced by `nftsignal synth var`.

Usage: python3 make_granger_golden.py path/to/nftsignal
"""

import csv
import subprocess
import sys
import tempfile
import warnings

import pandas as pd
from statsmodels.tsa.stattools import grangercausalitytests

CASES = [(0.4, 1, 120, 1.0, s) for s in range(3)] + [
    (0.0, 1, 80, 0.5, 11),
    (0.8, 2, 200, 0.3, 12),
    (0.3, 3, 60, 1.0, 13),
]


def main():
  cli = sys.argv[1]
  rows = []
  for coupling, lag, length, noise, seed in CASES:
    with tempfile.NamedTemporaryFile(suffix=".csv") as f:
      subprocess.run([cli, "synth", "var", "--coupling", str(coupling),
                      "--lag", str(lag), "--length", str(length), "--noise",
                      str(noise), "--seed", str(seed), "-o", f.name],
                     check=True)
      data = pd.read_csv(f.name)
    with warnings.catch_warnings():
      warnings.simplefilter("ignore")
      res = grangercausalitytests(data[["y", "x"]], maxlag=3, verbose=False)
    for lags in (1, 2, 3):
      fstat, p, df_den, df_num = res[lags][0]["ssr_ftest"]
      rows.append([coupling, lag, length, noise, seed, lags, repr(float(fstat)),
                   repr(float(p)), int(df_num), int(df_den)])
  with open("granger_statsmodels.csv", "w", newline="") as out:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["coupling", "true_lag", "length", "noise_sd", "seed", "lags",
                "f_stat", "p_value", "df_num", "df_den"])
    w.writerows(rows)


if __name__ == "__main__":
  main()
