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

#include "qvalab/bits.hpp"

#include <bit>
#include <stdexcept>

namespace qvalab {

Bits parse_bits(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      throw std::domain_error(std::string("parse_bits: unexpected character '") +
                              c + "'");
    }
  }
  return out;
}

std::string format_bits(std::span<const std::uint8_t> bits, int block) {
  std::string out;
  out.reserve(bits.size() * 2);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (block > 0 && i > 0 && i % static_cast<std::size_t>(block) == 0) {
      out.push_back(' ');
    }
    out.push_back(bits[i] ? '1' : '0');
  }
  return out;
}

std::vector<Symbol> pack_blocks(std::span<const std::uint8_t> bits, int width) {
  if (width <= 0 || width > 32) {
    throw std::domain_error("pack_blocks: block width must be in [1, 32]");
  }
  if (bits.size() % static_cast<std::size_t>(width) != 0) {
    throw std::domain_error("pack_blocks: bit count not a multiple of width");
  }
  std::vector<Symbol> out;
  out.reserve(bits.size() / width);
  for (std::size_t i = 0; i < bits.size(); i += width) {
    Symbol s = 0;
    for (int b = 0; b < width; ++b) {
      s = (s << 1) | (bits[i + b] & 1u);
    }
    out.push_back(s);
  }
  return out;
}

Bits unpack_blocks(std::span<const Symbol> blocks, int width) {
  if (width <= 0 || width > 32) {
    throw std::domain_error("unpack_blocks: block width must be in [1, 32]");
  }
  Bits out;
  out.reserve(blocks.size() * width);
  for (Symbol s : blocks) {
    for (int b = width - 1; b >= 0; --b) {
      out.push_back(static_cast<std::uint8_t>((s >> b) & 1u));
    }
  }
  return out;
}

int hamming_distance(Symbol a, Symbol b) { return std::popcount(a ^ b); }

int hamming_distance(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) {
    throw std::domain_error("hamming_distance: length mismatch");
  }
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

}  // namespace qvalab
