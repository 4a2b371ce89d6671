# Copyright 2026 The collide1d Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Collision-model simulation of a driven qubit coupled to a 1D waveguide."""

from ._core import *  # noqa: F401,F403
from ._core import __version__


def run_preset(name, jobs=1):
    """Run a built-in preset and return the result dictionary."""
    for preset, text in presets():
        if preset == name:
            return run_config(text, jobs)
    raise KeyError(f"unknown preset {name!r}")
