#include "qhm/io.hpp"

#include <bit>
#include <cmath>
#include <charconv>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <vector>

#include <json.hpp>

namespace qhm {
namespace {

constexpr const char* kFormat = "QHM1";
constexpr const char* kLayout = "p,n,i row-major";

std::string fmt_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt_hex(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  return std::string(buf, r.ptr);
}

bool parse_double(const std::string& s, double& v, std::chars_format f = std::chars_format::general) {
  const char* b = s.data();
  const char* e = b + s.size();
  // from_chars rejects a leading '+'; negative hex values carry a '-'
  auto r = std::from_chars(b, e, v, f);
  return r.ec == std::errc() && r.ptr == e;
}

bool parse_int(const std::string& s, int& v) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, v);
  return r.ec == std::errc() && r.ptr == e;
}

IoError fail(IoErrorCode c, std::string msg) { return {c, std::move(msg)}; }

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

/// Reads "key=value"; returns false on a missing line or key.
bool read_key(std::istream& in, const std::string& key, std::string& value) {
  std::string line;
  if (!read_line(in, line)) return false;
  const auto eq = line.find('=');
  if (eq == std::string::npos || line.substr(0, eq) != key) return false;
  value = line.substr(eq + 1);
  return true;
}

void write_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

bool read_le(std::istream& in, double& v) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) return false;
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  v = std::bit_cast<double>(bits);
  return true;
}

struct Header {
  AlgebraParams params;
  Truncation trunc;
  Encoding enc = Encoding::binary;
};

IoResult<Header> read_header(std::istream& in) {
  std::string v;
  if (!read_key(in, "format", v)) return fail(IoErrorCode::corrupt_header, "missing format line");
  if (v != kFormat) return fail(IoErrorCode::version_mismatch, "unsupported format '" + v + "'");
  Header h;
  auto real = [&](const char* key, double& dst) {
    return read_key(in, key, v) && parse_double(v, dst);
  };
  auto integer = [&](const char* key, int& dst) { return read_key(in, key, v) && parse_int(v, dst); };
  if (!integer("c", h.params.c) || !real("hbar", h.params.hbar) || !real("mu", h.params.mu) ||
      !real("nu", h.params.nu) || !real("alpha", h.params.alpha) || !integer("P", h.trunc.P) ||
      !integer("N", h.trunc.N) || !integer("Nx", h.trunc.Nx) ||
      !integer("interp_order", h.trunc.interp_order))
    return fail(IoErrorCode::corrupt_header, "malformed parameter line");
  if (!read_key(in, "layout", v) || v != kLayout)
    return fail(IoErrorCode::corrupt_header, "unsupported layout");
  if (!read_key(in, "data", v)) return fail(IoErrorCode::corrupt_header, "missing data line");
  if (v == "binary-le")
    h.enc = Encoding::binary;
  else if (v == "hexfloat")
    h.enc = Encoding::hexfloat;
  else
    return fail(IoErrorCode::corrupt_header, "unknown data encoding '" + v + "'");
  try {
    h.params.validate();
    h.trunc.validate();
  } catch (const ConfigError& e) {
    return fail(IoErrorCode::corrupt_header, e.what());
  }
  return h;
}

template <class T>
IoResult<T> forward(const IoError& e) {
  return e;
}

}  // namespace

std::string to_string(IoErrorCode code) {
  switch (code) {
    case IoErrorCode::version_mismatch: return "version_mismatch";
    case IoErrorCode::corrupt_header: return "corrupt_header";
    case IoErrorCode::band_mismatch: return "band_mismatch";
    default: return "corrupt_stream";
  }
}

void serialize(const AlgebraElement& a, std::ostream& out, Encoding enc) {
  const auto& p = a.params();
  const auto& t = a.trunc();
  out << "format=" << kFormat << '\n'
      << "c=" << p.c << '\n'
      << "hbar=" << fmt_double(p.hbar) << '\n'
      << "mu=" << fmt_double(p.mu) << '\n'
      << "nu=" << fmt_double(p.nu) << '\n'
      << "alpha=" << fmt_double(p.alpha) << '\n'
      << "P=" << t.P << '\n'
      << "N=" << t.N << '\n'
      << "Nx=" << t.Nx << '\n'
      << "interp_order=" << t.interp_order << '\n'
      << "layout=" << kLayout << '\n';
  if (enc == Encoding::binary) {
    out << "data=binary-le\n";
    for (cplx z : a.coefficients()) {
      write_le(out, z.real());
      write_le(out, z.imag());
    }
  } else {
    out << "data=hexfloat\n";
    std::size_t k = 0;
    for (cplx z : a.coefficients()) {
      out << fmt_hex(z.real()) << ' ' << fmt_hex(z.imag());
      out << (++k % 4 == 0 ? '\n' : ' ');
    }
    if (k % 4 != 0) out << '\n';
  }
}

IoResult<AlgebraElement> deserialize(std::istream& in, const std::optional<Truncation>& expected) {
  auto hr = read_header(in);
  if (!hr) return hr.error();
  const Header& h = hr.value();
  if (expected && !(*expected == h.trunc))
    return fail(IoErrorCode::band_mismatch,
                "file truncation " + describe(h.trunc) + " differs from " + describe(*expected));
  AlgebraElement a(h.params, h.trunc);
  auto coeffs = a.coefficients();
  if (h.enc == Encoding::binary) {
    for (auto& z : coeffs) {
      double re, im;
      if (!read_le(in, re) || !read_le(in, im))
        return fail(IoErrorCode::corrupt_stream, "binary block ends early");
      z = {re, im};
    }
  } else {
    std::string tok;
    for (auto& z : coeffs) {
      double re, im;
      if (!(in >> tok) || !parse_double(tok, re, std::chars_format::hex))
        return fail(IoErrorCode::corrupt_stream, "hexfloat block ends early or is malformed");
      if (!(in >> tok) || !parse_double(tok, im, std::chars_format::hex))
        return fail(IoErrorCode::corrupt_stream, "hexfloat block ends early or is malformed");
      z = {re, im};
    }
    std::string rest;
    std::getline(in, rest);
  }
  for (cplx z : a.coefficients())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      return fail(IoErrorCode::corrupt_stream, "non-finite coefficient");
  return a;
}

std::string to_json(const AlgebraElement& a) {
  const auto& p = a.params();
  const auto& t = a.trunc();
  nlohmann::json j;
  j["format"] = kFormat;
  j["c"] = p.c;
  j["hbar"] = p.hbar;
  j["mu"] = p.mu;
  j["nu"] = p.nu;
  j["alpha"] = p.alpha;
  j["P"] = t.P;
  j["N"] = t.N;
  j["Nx"] = t.Nx;
  j["interp_order"] = t.interp_order;
  j["layout"] = kLayout;
  auto& data = j["data"] = nlohmann::json::array();
  for (cplx z : a.coefficients()) {
    data.push_back(z.real());
    data.push_back(z.imag());
  }
  return j.dump();
}

IoResult<AlgebraElement> from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    return fail(IoErrorCode::corrupt_stream, e.what());
  }
  if (!j.is_object() || !j.contains("format"))
    return fail(IoErrorCode::corrupt_header, "missing format field");
  if (j["format"] != kFormat) return fail(IoErrorCode::version_mismatch, "unsupported format");
  AlgebraParams p;
  Truncation t;
  try {
    p.c = j.at("c").get<int>();
    p.hbar = j.at("hbar").get<double>();
    p.mu = j.at("mu").get<double>();
    p.nu = j.at("nu").get<double>();
    p.alpha = j.at("alpha").get<double>();
    t.P = j.at("P").get<int>();
    t.N = j.at("N").get<int>();
    t.Nx = j.at("Nx").get<int>();
    t.interp_order = j.at("interp_order").get<int>();
    if (j.at("layout") != kLayout) return fail(IoErrorCode::corrupt_header, "unsupported layout");
    p.validate();
    t.validate();
  } catch (const nlohmann::json::exception& e) {
    return fail(IoErrorCode::corrupt_header, e.what());
  } catch (const ConfigError& e) {
    return fail(IoErrorCode::corrupt_header, e.what());
  }
  AlgebraElement a(p, t);
  const auto& data = j.contains("data") ? j["data"] : nlohmann::json();
  auto coeffs = a.coefficients();
  if (!data.is_array() || data.size() != 2 * coeffs.size())
    return fail(IoErrorCode::corrupt_stream, "data array has the wrong length");
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!data[2 * k].is_number() || !data[2 * k + 1].is_number())
      return fail(IoErrorCode::corrupt_stream, "non-numeric coefficient");
    coeffs[k] = {data[2 * k].get<double>(), data[2 * k + 1].get<double>()};
  }
  return a;
}

namespace {

template <class Form>
void write_form(const Form& w, int degree, std::ostream& out, Encoding enc) {
  out << "form=" << degree << '\n';
  for (int j = 1; j <= 3; ++j) serialize(w[j], out, enc);
}

template <class Form>
IoResult<Form> read_form(std::istream& in, int degree) {
  std::string v;
  if (!read_key(in, "form", v)) return fail(IoErrorCode::corrupt_header, "missing form line");
  if (v != std::to_string(degree))
    return fail(IoErrorCode::corrupt_header, "expected form=" + std::to_string(degree));
  Form w;
  for (int j = 1; j <= 3; ++j) {
    auto r = deserialize(in, j == 1 ? std::nullopt : std::optional<Truncation>(w[1].trunc()));
    if (!r) return r.error();
    if (j > 1 && !(r.value().params() == w[1].params()))
      return fail(IoErrorCode::band_mismatch, "form coordinates use different parameters");
    w[j] = std::move(r.value());
  }
  return w;
}

}  // namespace

void serialize(const OneForm& w, std::ostream& out, Encoding enc) { write_form(w, 1, out, enc); }
void serialize(const TwoForm& w, std::ostream& out, Encoding enc) { write_form(w, 2, out, enc); }
IoResult<OneForm> deserialize_one_form(std::istream& in) { return read_form<OneForm>(in, 1); }
IoResult<TwoForm> deserialize_two_form(std::istream& in) { return read_form<TwoForm>(in, 2); }

void serialize(const Connection& conn, std::ostream& out, Encoding enc) {
  out << "connection q=" << conn.spec.q << " skew=checked\n";
  for (const auto& m : conn.A)
    for (const auto& e : m.entries()) serialize(e, out, enc);
}

IoResult<Connection> deserialize_connection(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) return fail(IoErrorCode::corrupt_header, "missing connection line");
  const std::string prefix = "connection q=";
  const std::string suffix = " skew=checked";
  if (line.rfind(prefix, 0) != 0 || line.size() < prefix.size() + suffix.size() ||
      line.compare(line.size() - suffix.size(), suffix.size(), suffix) != 0)
    return fail(IoErrorCode::corrupt_header, "malformed connection line");
  int q = 0;
  if (!parse_int(line.substr(prefix.size(), line.size() - prefix.size() - suffix.size()), q) ||
      q < 1)
    return fail(IoErrorCode::corrupt_header, "invalid module rank");
  std::array<AlgebraMatrix, 3> A;
  std::optional<Truncation> trunc;
  std::optional<AlgebraParams> params;
  for (int slot = 0; slot < 3; ++slot) {
    std::vector<AlgebraElement> entries;
    for (int k = 0; k < q * q; ++k) {
      auto r = deserialize(in, trunc);
      if (!r) return r.error();
      if (params && !(r.value().params() == *params))
        return fail(IoErrorCode::band_mismatch, "connection entries use different parameters");
      trunc = r.value().trunc();
      params = r.value().params();
      entries.push_back(std::move(r.value()));
    }
    A[slot] = AlgebraMatrix(q, *params, *trunc);
    A[slot].entries() = std::move(entries);
  }
  try {
    return make_connection(ModuleSpec{q}, A[0], A[1], A[2]);
  } catch (const ConfigError& e) {
    return fail(IoErrorCode::corrupt_stream, e.what());
  }
}

}  // namespace qhm
