#!/usr/bin/env python3
# Copyright 2026 The qrc-robustness Authors
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
"""Writes a two-image 3x3 IDX fixture. Pixel k of image n is (40 n + 29 k) mod 256."""

import os
import struct

HERE = os.path.dirname(os.path.abspath(__file__))

images = struct.pack(">IIII", 0x803, 2, 3, 3)
images += bytes((40 * n + 29 * k) % 256 for n in range(2) for k in range(9))
labels = struct.pack(">II", 0x801, 2) + bytes([7, 2])

with open(os.path.join(HERE, "fixture-images-idx3-ubyte"), "wb") as f:
    f.write(images)
with open(os.path.join(HERE, "fixture-labels-idx1-ubyte"), "wb") as f:
    f.write(labels)
