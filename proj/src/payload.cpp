#include "wavecs/payload.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <string>

#include <zlib.h>

#include "wavecs/errors.hpp"

namespace wavecs {
namespace {

constexpr std::uint8_t kMagic[4] = {'W', 'C', 'S', '1'};
constexpr std::size_t kHeaderSize = 4 + 4 + 4 + 1 + 1 + 1 + 8 + 8 + 8 + 8 + 4 + 4;

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) { little_endian(v, 4); }
  void u64(std::uint64_t v) { little_endian(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

 private:
  void little_endian(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(little_endian(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(little_endian(4)); }
  std::uint64_t u64() { return little_endian(8); }
  double f64() { return std::bit_cast<double>(u64()); }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::uint64_t little_endian(int bytes) {
    if (remaining() < static_cast<std::size_t>(bytes)) throw FormatError("unexpected end of payload");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; payload bodies are far below 4 GiB.
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> serialize_payload(const CsPayload& p) {
  validate_payload(p);
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 8 * p.i_cs() + 4);
  Writer w(out);
  for (std::uint8_t b : kMagic) w.u8(b);
  w.u32(p.width);
  w.u32(p.height);
  w.u8(static_cast<std::uint8_t>(p.wavelet.family));
  w.u8(static_cast<std::uint8_t>(p.wavelet.tap_count));
  w.u8(p.levels);
  w.f64(p.rr_coarse);
  w.f64(p.rr_next);
  w.u64(p.seed_coarse);
  w.u64(p.seed_next);
  w.u32(static_cast<std::uint32_t>(p.y_coarse.size()));
  w.u32(static_cast<std::uint32_t>(p.y_next.size()));
  const std::size_t body_start = out.size();
  for (double v : p.approx) w.f64(v);
  for (double v : p.y_coarse) w.f64(v);
  for (double v : p.y_next) w.f64(v);
  const std::uint32_t crc = crc_of(std::span(out).subspan(body_start));
  w.u32(crc);
  return out;
}

CsPayload deserialize_payload(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  for (std::uint8_t b : kMagic) {
    if (r.u8() != b) throw FormatError("bad magic: not a WCS1 payload");
  }
  CsPayload p;
  p.width = r.u32();
  p.height = r.u32();
  const std::uint8_t family = r.u8();
  const std::uint8_t taps = r.u8();
  p.wavelet = WaveletId{static_cast<WaveletFamily>(family), taps};
  p.levels = r.u8();
  p.rr_coarse = r.f64();
  p.rr_next = r.f64();
  p.seed_coarse = r.u64();
  p.seed_next = r.u64();
  const std::uint32_t n_coarse = r.u32();
  const std::uint32_t n_next = r.u32();

  const std::size_t body_values = static_cast<std::size_t>(kApproxLength) + n_coarse + n_next;
  if (r.remaining() < 8 * body_values + 4) throw FormatError("unexpected end of payload");
  const std::size_t body_start = r.position();
  p.approx.resize(kApproxLength);
  for (double& v : p.approx) v = r.f64();
  p.y_coarse.resize(n_coarse);
  for (double& v : p.y_coarse) v = r.f64();
  p.y_next.resize(n_next);
  for (double& v : p.y_next) v = r.f64();
  const std::size_t body_end = r.position();
  const std::uint32_t stored_crc = r.u32();
  if (r.remaining() != 0) throw FormatError("trailing bytes after payload checksum");
  if (crc_of(bytes.subspan(body_start, body_end - body_start)) != stored_crc) {
    throw FormatError("payload checksum mismatch");
  }
  validate_payload(p);
  return p;
}

void write_payload(const CsPayload& payload, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = serialize_payload(payload);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

CsPayload read_payload(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return deserialize_payload(bytes);
}

}  // namespace wavecs
