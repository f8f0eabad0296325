// src/storage.cpp

// Copyright 2026  artic authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "artic/storage.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace artic {

namespace {

constexpr unsigned char kAftMagic[8] = {'A', 'F', 'T', 'R', 'K', 0, 0, 1};
constexpr unsigned char kCkptMagic[8] = {'A', 'C', 'K', 'P', 'T', 0, 0, 1};
constexpr uint32_t kAftVersion = 1;
constexpr uint32_t kCkptVersion = 1;

class Reader {
 public:
  Reader(const std::string& path, const char* what)
      : path_(path), what_(what), in_(path, std::ios::binary) {
    if (!in_) throw Error(std::string(what) + ": cannot open " + path);
  }

  void bytes(void* dst, size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n)
      throw Error(std::string(what_) + ": truncated file " + path_);
  }
  uint8_t u8() { return fixed<uint8_t, 1>(); }
  uint16_t u16() { return fixed<uint16_t, 2>(); }
  uint32_t u32() { return fixed<uint32_t, 4>(); }
  uint64_t u64() { return fixed<uint64_t, 8>(); }
  int64_t i64() { return static_cast<int64_t>(u64()); }
  float f32() {
    uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  double f64() {
    uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::string str() {
    uint32_t n = u32();
    if (n > (1u << 20))
      throw Error(std::string(what_) + ": implausible string length in " +
                  path_);
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }
  void f32_array(float* dst, size_t n) {
    // Payloads are little-endian f32; bulk-read then fix up per element.
    bytes(dst, n * 4);
    for (size_t i = 0; i < n; ++i) {
      unsigned char b[4];
      std::memcpy(b, dst + i, 4);
      uint32_t bits = static_cast<uint32_t>(b[0]) |
                      static_cast<uint32_t>(b[1]) << 8 |
                      static_cast<uint32_t>(b[2]) << 16 |
                      static_cast<uint32_t>(b[3]) << 24;
      std::memcpy(dst + i, &bits, 4);
    }
  }
  bool at_eof() {
    in_.peek();
    return in_.eof();
  }
  void skip(size_t n) {
    in_.seekg(static_cast<std::streamoff>(n), std::ios::cur);
    if (!in_) throw Error(std::string(what_) + ": truncated file " + path_);
  }

 private:
  template <typename T, size_t N>
  T fixed() {
    unsigned char b[N];
    bytes(b, N);
    uint64_t v = 0;
    for (size_t i = 0; i < N; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return static_cast<T>(v);
  }

  std::string path_;
  const char* what_;
  std::ifstream in_;
};

class Writer {
 public:
  Writer(const std::string& path, const char* what)
      : path_(path), what_(what), out_(path, std::ios::binary) {
    if (!out_) throw Error(std::string(what) + ": cannot open " + path);
  }

  void bytes(const void* src, size_t n) {
    out_.write(static_cast<const char*>(src), static_cast<std::streamsize>(n));
  }
  void u8(uint8_t v) { fixed<1>(v); }
  void u16(uint16_t v) { fixed<2>(v); }
  void u32(uint32_t v) { fixed<4>(v); }
  void u64(uint64_t v) { fixed<8>(v); }
  void i64(int64_t v) { u64(static_cast<uint64_t>(v)); }
  void f32(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    u32(bits);
  }
  void f64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void f32_array(const float* src, size_t n) {
    for (size_t i = 0; i < n; ++i) f32(src[i]);
  }
  void close() {
    out_.flush();
    if (!out_) throw Error(std::string(what_) + ": write failed for " + path_);
    out_.close();
  }

 private:
  template <size_t N>
  void fixed(uint64_t v) {
    unsigned char b[N];
    for (size_t i = 0; i < N; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, N);
  }

  std::string path_;
  const char* what_;
  std::ofstream out_;
};

void check_channel_names(const std::vector<std::string>& names,
                         const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(std::string(what) + ": empty channel name");
    if (!seen.insert(n).second)
      throw Error(std::string(what) + ": duplicate channel name '" + n + "'");
  }
}

void check_finite(const std::vector<float>& v, const char* what) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw Error(std::string(what) + ": non-finite value at flat index " +
                  std::to_string(i));
}

}  // namespace

Waveform read_wav(const std::string& path) {
  Reader r(path, "read_wav");
  char riff[4], wave[4];
  r.bytes(riff, 4);
  if (std::memcmp(riff, "RIFF", 4) != 0)
    throw Error("read_wav: not a RIFF file: " + path);
  r.u32();  // declared RIFF size; chunk sizes are authoritative below
  r.bytes(wave, 4);
  if (std::memcmp(wave, "WAVE", 4) != 0)
    throw Error("read_wav: not a WAVE file: " + path);

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  Waveform w;
  bool have_data = false;

  while (!r.at_eof()) {
    char id[4];
    r.bytes(id, 4);
    uint32_t size = r.u32();
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw Error("read_wav: malformed fmt chunk: " + path);
      format = r.u16();
      channels = r.u16();
      rate = r.u32();
      r.u32();  // byte rate
      r.u16();  // block align
      bits = r.u16();
      if (size > 16) r.skip(size - 16);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (!have_fmt) throw Error("read_wav: data before fmt chunk: " + path);
      if (format != 1 || bits != 16 || channels != 1)
        throw Error("read_wav: unsupported encoding (need PCM16 mono): " +
                    path);
      size_t n = size / 2;
      std::vector<unsigned char> raw(size);
      try {
        r.bytes(raw.data(), size);
      } catch (const Error&) {
        throw Error("read_wav: truncated data chunk: " + path);
      }
      w.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        int16_t s = static_cast<int16_t>(
            static_cast<uint16_t>(raw[2 * i]) |
            static_cast<uint16_t>(raw[2 * i + 1]) << 8);
        w.samples[i] = static_cast<float>(s) / 32768.0f;
      }
      have_data = true;
    } else {
      r.skip(size + (size & 1));  // chunks are word-aligned
    }
  }
  if (!have_fmt || !have_data)
    throw Error("read_wav: missing fmt or data chunk: " + path);
  if (rate == 0) throw Error("read_wav: zero sample rate: " + path);
  w.sample_rate = static_cast<int>(rate);
  return w;
}

void write_wav(const std::string& path, const Waveform& w) {
  if (w.sample_rate <= 0) throw Error("write_wav: sample_rate must be > 0");
  Writer out(path, "write_wav");
  uint32_t n = static_cast<uint32_t>(w.samples.size());
  uint32_t data_bytes = n * 2;
  out.bytes("RIFF", 4);
  out.u32(36 + data_bytes);
  out.bytes("WAVE", 4);
  out.bytes("fmt ", 4);
  out.u32(16);
  out.u16(1);  // PCM
  out.u16(1);  // mono
  out.u32(static_cast<uint32_t>(w.sample_rate));
  out.u32(static_cast<uint32_t>(w.sample_rate) * 2);
  out.u16(2);
  out.u16(16);
  out.bytes("data", 4);
  out.u32(data_bytes);
  for (float s : w.samples) {
    if (!std::isfinite(s)) throw Error("write_wav: non-finite sample");
    double v = static_cast<double>(s);
    if (v < -1.0) v = -1.0;
    if (v > 1.0) v = 1.0;
    // Round to nearest, ties to even; then clip 32768 back into int16 range.
    double q = std::nearbyint(v * 32768.0);
    if (q > 32767.0) q = 32767.0;
    if (q < -32768.0) q = -32768.0;
    out.u16(static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  out.close();
}

FeatureTrack read_aft(const std::string& path) {
  Reader r(path, "read_aft");
  unsigned char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kAftMagic, 8) != 0)
    throw Error("read_aft: bad magic: " + path);
  uint32_t version = r.u32();
  if (version != kAftVersion)
    throw Error("read_aft: unsupported version " + std::to_string(version) +
                ": " + path);
  FeatureTrack t;
  t.frame_rate = r.f64();
  uint64_t n_frames = r.u64();
  uint32_t n_channels = r.u32();
  if (t.frame_rate <= 0 || !std::isfinite(t.frame_rate))
    throw Error("read_aft: invalid frame rate: " + path);
  t.channel_names.reserve(n_channels);
  for (uint32_t c = 0; c < n_channels; ++c) t.channel_names.push_back(r.str());
  check_channel_names(t.channel_names, "read_aft");
  t.n_frames = static_cast<int64_t>(n_frames);
  size_t n = static_cast<size_t>(n_frames) * n_channels;
  t.data.resize(n);
  try {
    r.f32_array(t.data.data(), n);
  } catch (const Error&) {
    throw Error("read_aft: payload size mismatch: " + path);
  }
  if (!r.at_eof())
    throw Error("read_aft: payload size mismatch (trailing bytes): " + path);
  check_finite(t.data, "read_aft");
  return t;
}

void write_aft(const std::string& path, const FeatureTrack& t) {
  if (t.frame_rate <= 0 || !std::isfinite(t.frame_rate))
    throw Error("write_aft: frame_rate must be positive");
  check_channel_names(t.channel_names, "write_aft");
  if (t.data.size() !=
      static_cast<size_t>(t.n_frames) * t.channel_names.size())
    throw Error("write_aft: data size does not match n_frames x n_channels");
  check_finite(t.data, "write_aft");
  Writer out(path, "write_aft");
  out.bytes(kAftMagic, 8);
  out.u32(kAftVersion);
  out.f64(t.frame_rate);
  out.u64(static_cast<uint64_t>(t.n_frames));
  out.u32(static_cast<uint32_t>(t.channel_names.size()));
  for (const auto& name : t.channel_names) out.str(name);
  out.f32_array(t.data.data(), t.data.size());
  out.close();
}

FeatureTrack import_csv_features(const std::string& path, double frame_rate) {
  if (frame_rate <= 0)
    throw Error("import_csv_features: frame_rate must be positive");
  std::ifstream in(path);
  if (!in) throw Error("import_csv_features: cannot open " + path);

  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur.push_back(ch);
      }
    }
    cells.push_back(cur);
    for (auto& c : cells) {
      size_t a = c.find_first_not_of(" \t");
      size_t b = c.find_last_not_of(" \t");
      c = (a == std::string::npos) ? std::string() : c.substr(a, b - a + 1);
    }
    return cells;
  };

  std::string line;
  if (!std::getline(in, line))
    throw Error("import_csv_features: empty file: " + path);
  FeatureTrack t;
  t.frame_rate = frame_rate;
  t.channel_names = split(line);
  check_channel_names(t.channel_names, "import_csv_features");
  size_t n_channels = t.channel_names.size();

  size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    auto cells = split(line);
    if (cells.size() != n_channels)
      throw Error("import_csv_features: row " + std::to_string(row) + " has " +
                  std::to_string(cells.size()) + " cells, expected " +
                  std::to_string(n_channels) + ": " + path);
    for (size_t c = 0; c < cells.size(); ++c) {
      double v;
      const char* first = cells[c].data();
      const char* last = first + cells[c].size();
      auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
        throw Error("import_csv_features: non-numeric cell at row " +
                    std::to_string(row) + " col " + std::to_string(c + 1) +
                    " ('" + cells[c] + "'): " + path);
      t.data.push_back(static_cast<float>(v));
    }
  }
  t.n_frames = static_cast<int64_t>(row);
  return t;
}

namespace {

void write_tensor_table(Writer& out,
                        const std::map<std::string, TensorEntry>& table) {
  out.u32(static_cast<uint32_t>(table.size()));
  for (const auto& [name, entry] : table) {
    if (entry.values.size() != static_cast<size_t>(entry.numel()))
      throw Error("write_checkpoint: tensor '" + name +
                  "' has " + std::to_string(entry.values.size()) +
                  " values but shape product " + std::to_string(entry.numel()));
    out.str(name);
    out.u32(static_cast<uint32_t>(entry.shape.size()));
    for (int64_t d : entry.shape) out.u64(static_cast<uint64_t>(d));
    out.f32_array(entry.values.data(), entry.values.size());
  }
}

std::map<std::string, TensorEntry> read_tensor_table(Reader& r) {
  std::map<std::string, TensorEntry> table;
  uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) {
    std::string name = r.str();
    TensorEntry e;
    uint32_t ndim = r.u32();
    e.shape.resize(ndim);
    for (uint32_t d = 0; d < ndim; ++d)
      e.shape[d] = static_cast<int64_t>(r.u64());
    int64_t numel = e.numel();
    if (numel < 0 || numel > (int64_t(1) << 33))
      throw Error("read_checkpoint: implausible tensor size for '" + name +
                  "'");
    e.values.resize(static_cast<size_t>(numel));
    r.f32_array(e.values.data(), e.values.size());
    table.emplace(std::move(name), std::move(e));
  }
  return table;
}

}  // namespace

Checkpoint read_checkpoint(const std::string& path) {
  Reader r(path, "read_checkpoint");
  unsigned char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kCkptMagic, 8) != 0)
    throw Error("read_checkpoint: bad magic: " + path);
  Checkpoint c;
  c.format_version = r.u32();
  if (c.format_version != kCkptVersion)
    throw Error("read_checkpoint: unsupported version " +
                std::to_string(c.format_version) + ": " + path);
  c.config_digest = r.str();
  c.step = r.i64();
  c.tensors = read_tensor_table(r);
  uint8_t has_opt = r.u8();
  if (has_opt) c.optimizer_state = read_tensor_table(r);
  return c;
}

void write_checkpoint(const std::string& path, const Checkpoint& c) {
  Writer out(path, "write_checkpoint");
  out.bytes(kCkptMagic, 8);
  out.u32(c.format_version);
  out.str(c.config_digest);
  out.i64(c.step);
  write_tensor_table(out, c.tensors);
  out.u8(c.optimizer_state.empty() ? 0 : 1);
  if (!c.optimizer_state.empty()) write_tensor_table(out, c.optimizer_state);
  out.close();
}

}  // namespace artic
