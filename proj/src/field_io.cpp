#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "error.hpp"
#include "field.hpp"

namespace ciscat {

namespace {

constexpr const char* kMagic = "CISCAT-FIELD v1";

void put_le_double(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le_double(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) fail(ErrorKind::Io, "field dump truncated in binary payload");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

std::string read_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Io, std::string("field dump missing ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void write_field(std::ostream& out, const SpinorField& field, FieldEncoding encoding) {
  validate(field);
  const Grid2D& g = field.grid;
  out << kMagic << '\n';
  std::ostringstream dims;
  dims << std::setprecision(17) << g.n_xi() << ' ' << g.n_eta() << ' ' << g.xi_min()
       << ' ' << g.xi_max() << ' ' << g.eta_min() << ' ' << g.eta_max() << ' '
       << field.tau;
  out << dims.str() << '\n';
  if (encoding == FieldEncoding::Binary) {
    out << "encoding binary\n";
    for (const auto* comp : {&field.g1, &field.g2})
      for (const cplx& v : *comp) {
        put_le_double(out, v.real());
        put_le_double(out, v.imag());
      }
  } else {
    out << "encoding ascii\n";
    out << std::setprecision(17);
    for (const auto* comp : {&field.g1, &field.g2})
      for (const cplx& v : *comp) out << v.real() << ' ' << v.imag() << '\n';
  }
  if (!out) fail(ErrorKind::Io, "failed writing field dump");
}

void write_field(const std::string& path, const SpinorField& field,
                 FieldEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  write_field(out, field, encoding);
}

SpinorField read_field(std::istream& in) {
  if (read_line(in, "magic line") != kMagic)
    fail(ErrorKind::Io, "not a CISCAT-FIELD v1 dump");
  std::istringstream dims(read_line(in, "grid line"));
  int n_xi = 0, n_eta = 0;
  double x0, x1, y0, y1, tau;
  if (!(dims >> n_xi >> n_eta >> x0 >> x1 >> y0 >> y1 >> tau))
    fail(ErrorKind::Io, "malformed grid line in field dump");
  const std::string enc = read_line(in, "encoding line");
  SpinorField field(Grid2D(n_xi, n_eta, x0, x1, y0, y1), tau);
  if (enc == "encoding binary") {
    for (auto* comp : {&field.g1, &field.g2})
      for (cplx& v : *comp) {
        const double re = get_le_double(in);
        const double im = get_le_double(in);
        v = {re, im};
      }
  } else if (enc == "encoding ascii") {
    for (auto* comp : {&field.g1, &field.g2})
      for (cplx& v : *comp) {
        double re, im;
        if (!(in >> re >> im)) fail(ErrorKind::Io, "field dump truncated in ascii payload");
        v = {re, im};
      }
  } else {
    fail(ErrorKind::Io, "unknown field encoding: " + enc);
  }
  return field;
}

SpinorField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  return read_field(in);
}

}  // namespace ciscat
