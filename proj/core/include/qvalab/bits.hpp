// Copyright 2026 The qvalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qvalab {

/// One bit per element, each 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// A block of up to 32 bits packed MSB-first: the first bit of the block is
/// the most significant bit of the symbol.
using Symbol = std::uint32_t;

/// Parses a '0'/'1' string. Whitespace is ignored; any other character is a
/// domain error.
Bits parse_bits(std::string_view text);

/// Formats bits as '0'/'1' text, inserting a space every `block` bits
/// (block == 0 means no separators).
std::string format_bits(std::span<const std::uint8_t> bits, int block = 0);

/// Packs consecutive groups of `width` bits into symbols.
std::vector<Symbol> pack_blocks(std::span<const std::uint8_t> bits, int width);

/// Inverse of pack_blocks.
Bits unpack_blocks(std::span<const Symbol> blocks, int width);

int hamming_distance(Symbol a, Symbol b);
int hamming_distance(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b);

}  // namespace qvalab
