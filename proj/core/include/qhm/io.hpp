#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "qhm/connections.hpp"
#include "qhm/forms.hpp"

namespace qhm {

enum class IoErrorCode { version_mismatch, corrupt_header, band_mismatch, corrupt_stream };

struct IoError {
  IoErrorCode code;
  std::string message;
};

std::string to_string(IoErrorCode code);

/// Value or IoError; deserializers never throw on malformed input.
template <class T>
class IoResult {
 public:
  IoResult(T value) : v_(std::move(value)) {}
  IoResult(IoError err) : v_(std::move(err)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<T>(v_); }
  T& value() { return std::get<T>(v_); }
  const IoError& error() const { return std::get<IoError>(v_); }

 private:
  std::variant<T, IoError> v_;
};

enum class Encoding { binary, hexfloat };

/// QHM1 element block:
///
///   format=QHM1
///   c=... hbar=... mu=... nu=... alpha=... P=... N=... Nx=... interp_order=...
///   layout=p,n,i row-major
///   data=binary-le | data=hexfloat
///   <2 (2P+1)(2N+1) Nx doubles, re/im interleaved>
///
/// one key per line. Binary data is raw little-endian IEEE-754; hexfloat data
/// is whitespace-separated and ends with a newline.
void serialize(const AlgebraElement& a, std::ostream& out, Encoding enc = Encoding::binary);
/// If expected is given, a file with another truncation is a band mismatch.
IoResult<AlgebraElement> deserialize(std::istream& in,
                                     const std::optional<Truncation>& expected = std::nullopt);

std::string to_json(const AlgebraElement& a);
IoResult<AlgebraElement> from_json(const std::string& text);

/// "form=1" or "form=2" followed by three element blocks.
void serialize(const OneForm& w, std::ostream& out, Encoding enc = Encoding::binary);
void serialize(const TwoForm& w, std::ostream& out, Encoding enc = Encoding::binary);
IoResult<OneForm> deserialize_one_form(std::istream& in);
IoResult<TwoForm> deserialize_two_form(std::istream& in);

/// "connection q=<q> skew=checked" followed by 3 q^2 element blocks ordered
/// slot, row, column. Loading re-runs the skewness check.
void serialize(const Connection& conn, std::ostream& out, Encoding enc = Encoding::binary);
IoResult<Connection> deserialize_connection(std::istream& in);

}  // namespace qhm
