# Copyright 2026 The asyncrl Authors
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

import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(
    os.environ.get("ASYNCRL_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture
def experiments():
    return ROOT / "configs" / "experiments"


@pytest.fixture
def cli():
    path = os.environ.get("ASYNCRL_CLI") or shutil.which("asyncrl")
    if not path:
        pytest.skip("asyncrl CLI not available")
    return path
