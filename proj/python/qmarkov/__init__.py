# Copyright 2026 The qmarkov Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Approximate quantum Markov chains: states, divergences, recovery maps and checks."""

import json as _json

from ._qmarkov import *  # noqa: F401,F403
from ._qmarkov import run_casebook_json, run_suite_json

__version__ = "0.1.0"


def run_suite(name, dims=(2, 2, 2), trials=10, seed=1, nodes=64, vary_dims=False, threads=0):
    """Run a verification suite and return its report as a dict."""
    return _json.loads(run_suite_json(name, list(dims), trials, seed, nodes, vary_dims, threads))


def run_casebook(name):
    """Run a casebook experiment with its default parameters and return the report."""
    return _json.loads(run_casebook_json(name))
