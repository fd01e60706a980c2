#include "vamci/ingest/vaef.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

namespace vamci::ingest {
namespace {

std::uint32_t load_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void store_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

}  // namespace

const char* to_string(VaefErrc code) {
  switch (code) {
    case VaefErrc::bad_magic: return "bad magic";
    case VaefErrc::unsupported_version: return "unsupported version";
    case VaefErrc::unsupported_dtype: return "unsupported dtype";
    case VaefErrc::bad_reserved: return "nonzero reserved byte";
    case VaefErrc::truncated_header: return "truncated header";
    case VaefErrc::truncated_payload: return "truncated payload";
    case VaefErrc::trailing_bytes: return "trailing bytes";
    case VaefErrc::zero_columns: return "zero columns";
    case VaefErrc::non_finite: return "non-finite value";
  }
  return "unknown";
}

VaefError::VaefError(VaefErrc code, const std::string& detail)
    : ParseError(std::string("VAEF ") + to_string(code) + (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

EmbeddingMatrix read_embedding(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kVaefHeaderSize) {
    throw VaefError(VaefErrc::truncated_header, std::to_string(bytes.size()) + " bytes");
  }
  if (bytes[0] != 'V' || bytes[1] != 'A' || bytes[2] != 'E' || bytes[3] != 'F') {
    throw VaefError(VaefErrc::bad_magic, "");
  }
  const std::uint16_t version = static_cast<std::uint16_t>(bytes[4] | (bytes[5] << 8));
  if (version != kVaefVersion) {
    throw VaefError(VaefErrc::unsupported_version, "version " + std::to_string(version));
  }
  if (bytes[6] != kVaefDtypeFloat32) {
    throw VaefError(VaefErrc::unsupported_dtype, "dtype " + std::to_string(bytes[6]));
  }
  if (bytes[7] != 0) throw VaefError(VaefErrc::bad_reserved, "");
  const std::uint32_t rows = load_u32(bytes, 8);
  const std::uint32_t cols = load_u32(bytes, 12);
  if (cols == 0) throw VaefError(VaefErrc::zero_columns, "");

  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  const std::uint64_t expected = kVaefHeaderSize + count * 4;
  if (bytes.size() < expected) {
    throw VaefError(VaefErrc::truncated_payload,
                    "header declares " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " but payload holds " +
                        std::to_string((bytes.size() - kVaefHeaderSize) / 4) + " values");
  }
  if (bytes.size() > expected) {
    throw VaefError(VaefErrc::trailing_bytes,
                    std::to_string(bytes.size() - expected) + " extra bytes");
  }

  std::vector<float> data(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const float v = std::bit_cast<float>(load_u32(bytes, kVaefHeaderSize + i * 4));
    if (!std::isfinite(v)) {
      throw VaefError(VaefErrc::non_finite, "row " + std::to_string(i / cols) + ", column " +
                                                std::to_string(i % cols));
    }
    data[i] = v;
  }
  return EmbeddingMatrix(rows, cols, std::move(data));
}

std::vector<std::uint8_t> write_embedding(const EmbeddingMatrix& matrix) {
  std::vector<std::uint8_t> out;
  out.reserve(kVaefHeaderSize + matrix.data().size() * 4);
  for (const char c : {'V', 'A', 'E', 'F'}) out.push_back(static_cast<std::uint8_t>(c));
  out.push_back(static_cast<std::uint8_t>(kVaefVersion & 0xff));
  out.push_back(static_cast<std::uint8_t>(kVaefVersion >> 8));
  out.push_back(kVaefDtypeFloat32);
  out.push_back(0);
  store_u32(out, matrix.rows());
  store_u32(out, matrix.cols());
  for (const float v : matrix.data()) store_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("write failed: " + path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("write failed: " + path.string());
}

EmbeddingMatrix read_embedding_file(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return read_embedding(bytes);
  } catch (const VaefError& e) {
    throw VaefError(e.code(), path.string() + " (" + e.what() + ")");
  }
}

void write_embedding_file(const std::filesystem::path& path, const EmbeddingMatrix& matrix) {
  write_file_bytes(path, write_embedding(matrix));
}

}  // namespace vamci::ingest
