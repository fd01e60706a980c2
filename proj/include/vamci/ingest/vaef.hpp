#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vamci/core/embedding.hpp"
#include "vamci/core/error.hpp"

namespace vamci::ingest {

// VAEF layout (all little-endian):
//   0..3   magic "VAEF"
//   4..5   version (u16) = 1
//   6      dtype (u8), 1 = IEEE-754 binary32
//   7      reserved = 0
//   8..11  rows (u32)
//   12..15 cols (u32)
//   16..   rows*cols binary32 values, row-major, no trailing bytes
inline constexpr std::size_t kVaefHeaderSize = 16;
inline constexpr std::uint16_t kVaefVersion = 1;
inline constexpr std::uint8_t kVaefDtypeFloat32 = 1;

enum class VaefErrc {
  bad_magic,
  unsupported_version,
  unsupported_dtype,
  bad_reserved,
  truncated_header,
  truncated_payload,
  trailing_bytes,
  zero_columns,
  non_finite,
};

const char* to_string(VaefErrc code);

class VaefError : public ParseError {
 public:
  VaefError(VaefErrc code, const std::string& detail);
  VaefErrc code() const { return code_; }

 private:
  VaefErrc code_;
};

EmbeddingMatrix read_embedding(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_embedding(const EmbeddingMatrix& matrix);

// File wrappers. I/O failures raise ParseError naming the path; format errors are
// rethrown as VaefError with the path prepended.
EmbeddingMatrix read_embedding_file(const std::filesystem::path& path);
void write_embedding_file(const std::filesystem::path& path, const EmbeddingMatrix& matrix);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace vamci::ingest
