#include "neass/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "neass/errors.hpp"

namespace neass {

namespace {

constexpr char kMagic[8] = {'N', 'E', 'A', 'S', 'S', 'M', 'A', 'T'};

void put_u64(std::ofstream& out, std::uint64_t v) {
  std::array<unsigned char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
  std::array<unsigned char, 8> b;
  in.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ofstream& out, double d) { put_u64(out, std::bit_cast<std::uint64_t>(d)); }
double get_f64(std::ifstream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_matrix(const std::filesystem::path& path, const Mat& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix dump expects a square matrix");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out.write(kMagic, 8);
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) {
      put_f64(out, m(r, c).real());
      put_f64(out, m(r, c).imag());
    }
  if (!out) throw ValidationError("write failed: " + path.string());
}

Mat read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open for reading: " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw ValidationError("not a matrix dump: " + path.string());
  const std::uint64_t dim = get_u64(in);
  if (dim == 0 || dim > (1u << 20))
    throw ValidationError("unreasonable matrix dimension in " + path.string());
  Mat m(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) {
      const double re = get_f64(in);
      const double im = get_f64(in);
      m(r, c) = cplx(re, im);
    }
  if (!in) throw ValidationError("truncated matrix dump: " + path.string());
  return m;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace neass
