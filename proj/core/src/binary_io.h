// Copyright 2026 The ptnas Authors.
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

// Little-endian scalar encoding shared by the binary formats.

#ifndef PTNAS_SRC_BINARY_IO_H_
#define PTNAS_SRC_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>

#include "ptnas/error.h"

namespace ptnas::internal {

template <typename T>
T ToLittle(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    for (size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    std::memcpy(&value, bytes, sizeof(T));
  }
  return value;
}

inline void PutU32(std::string& out, uint32_t v) {
  v = ToLittle(v);
  out.append(reinterpret_cast<const char*>(&v), sizeof(v));
}

inline void PutF32(std::string& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  PutU32(out, bits);
}

// Sequential reader over a byte buffer; errors report the byte offset.
class ByteReader {
 public:
  ByteReader(const std::string& data, size_t offset = 0)
      : data_(data), offset_(offset) {}

  uint32_t U32() {
    Require(offset_ + 4 <= data_.size(), ErrorCode::kParse,
            "unexpected end of data at byte offset " + std::to_string(offset_));
    uint32_t v;
    std::memcpy(&v, data_.data() + offset_, sizeof(v));
    offset_ += 4;
    return ToLittle(v);
  }

  float F32() {
    const uint32_t bits = U32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  size_t offset() const { return offset_; }
  bool done() const { return offset_ == data_.size(); }

 private:
  const std::string& data_;
  size_t offset_;
};

}  // namespace ptnas::internal

#endif  // PTNAS_SRC_BINARY_IO_H_
