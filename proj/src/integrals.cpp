#include <qdft/errors.hpp>
#include <qdft/integrals.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace qdft {

namespace {

constexpr const char* kModule = "integrals";

int pair_index(int a, int b) { return a * (a + 1) / 2 + b; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string token, double& value) {
  for (char& c : token) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool parse_int(std::string_view token, int& value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

struct Header {
  int norb = -1;
  int nelec = -1;
  int ms2 = 0;
  std::vector<int> orbsym;
};

// Parses the namelist body (everything between &FCI and &END).
Header parse_header(std::string body, std::size_t end_line) {
  std::string spaced;
  spaced.reserve(body.size() * 2);
  for (char c : body) {
    if (c == ',') {
      spaced += ' ';
    } else if (c == '=') {
      spaced += " = ";
    } else {
      spaced += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  const auto tokens = split_ws(spaced);

  std::map<std::string, std::vector<std::string>> values;
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i + 1 < tokens.size() && tokens[i + 1] == "=") {
      key = tokens[i];
      values[key];
      ++i;
      continue;
    }
    if (tokens[i] == "=") {
      throw ParseError(kModule, end_line, "stray '=' in FCIDUMP header");
    }
    if (key.empty()) {
      throw ParseError(kModule, end_line, "unexpected token '" + tokens[i] + "' in FCIDUMP header");
    }
    values[key].push_back(tokens[i]);
  }

  auto single_int = [&](const std::string& name, int& out) {
    auto it = values.find(name);
    if (it == values.end()) return false;
    if (it->second.size() != 1 || !parse_int(it->second.front(), out)) {
      throw ParseError(kModule, end_line, "header field " + name + " is not an integer");
    }
    return true;
  };

  Header h;
  if (!single_int("NORB", h.norb)) throw ParseError(kModule, end_line, "FCIDUMP header is missing NORB");
  if (!single_int("NELEC", h.nelec)) throw ParseError(kModule, end_line, "FCIDUMP header is missing NELEC");
  single_int("MS2", h.ms2);
  if (h.norb < 0 || h.nelec < 0) throw ParseError(kModule, end_line, "NORB and NELEC must be non-negative");
  if (auto it = values.find("ORBSYM"); it != values.end()) {
    for (const auto& t : it->second) {
      int v = 0;
      if (!parse_int(t, v)) throw ParseError(kModule, end_line, "ORBSYM entry '" + t + "' is not an integer");
      h.orbsym.push_back(v);
    }
  }
  return h;
}

}  // namespace

OrbitalQuartet canonical_quartet(int p, int q, int r, int s) {
  if (p < q) std::swap(p, q);
  if (r < s) std::swap(r, s);
  if (pair_index(p, q) < pair_index(r, s)) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return {p, q, r, s};
}

IntegralSet::IntegralSet(int n_orbitals, int n_electrons, int spin_2ms)
    : n_orbitals_(n_orbitals),
      n_electrons_(n_electrons),
      spin_2ms_(spin_2ms),
      one_body_(Matrix::Zero(n_orbitals, n_orbitals)) {
  if (n_orbitals < 0 || n_electrons < 0) {
    throw ContractViolation(kModule, "orbital and electron counts must be non-negative");
  }
  if (n_electrons > 2 * n_orbitals) {
    throw ContractViolation(kModule, "n_electrons exceeds 2 * n_orbitals");
  }
}

void IntegralSet::check_index(int p) const {
  if (p < 0 || p >= n_orbitals_) {
    throw ContractViolation(kModule, "orbital index " + std::to_string(p) + " out of range");
  }
}

void IntegralSet::set_one_body(int p, int q, double value) {
  check_index(p);
  check_index(q);
  one_body_(p, q) = value;
  one_body_(q, p) = value;
}

double IntegralSet::two_body(int p, int q, int r, int s) const {
  auto it = two_body_.find(canonical_quartet(p, q, r, s));
  return it == two_body_.end() ? 0.0 : it->second;
}

void IntegralSet::set_two_body(int p, int q, int r, int s, double value) {
  for (int i : {p, q, r, s}) check_index(i);
  const auto key = canonical_quartet(p, q, r, s);
  if (value == 0.0) {
    two_body_.erase(key);
  } else {
    two_body_[key] = value;
  }
}

bool operator==(const IntegralSet& a, const IntegralSet& b) {
  return a.n_orbitals_ == b.n_orbitals_ && a.n_electrons_ == b.n_electrons_ &&
         a.spin_2ms_ == b.spin_2ms_ && a.core_energy_ == b.core_energy_ &&
         a.one_body_ == b.one_body_ && a.two_body_ == b.two_body_ &&
         a.orbsym_ == b.orbsym_;
}

void TwoBodyTensor::set_symmetric(int p, int q, int r, int s, double v) {
  for (auto [a, b, c, d] : std::array<std::array<int, 4>, 8>{{{p, q, r, s},
                                                              {q, p, r, s},
                                                              {p, q, s, r},
                                                              {q, p, s, r},
                                                              {r, s, p, q},
                                                              {s, r, p, q},
                                                              {r, s, q, p},
                                                              {s, r, q, p}}}) {
    (*this)(a, b, c, d) = v;
  }
}

TwoBodyTensor dense_two_body(const IntegralSet& set) {
  TwoBodyTensor t(set.n_orbitals());
  for (const auto& [k, v] : set.two_body_entries()) t.set_symmetric(k.p, k.q, k.r, k.s, v);
  return t;
}

IntegralSet parse_fcidump(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string header_text;
  bool header_started = false;
  bool header_done = false;

  while (!header_done && std::getline(in, line)) {
    ++line_no;
    std::string upper(line);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    std::string_view t = trim(upper);
    if (t.empty() && !header_started) continue;
    if (!header_started) {
      if (!t.starts_with("&FCI")) {
        throw ParseError(kModule, line_no, "expected '&FCI' namelist header");
      }
      header_started = true;
      t.remove_prefix(4);
    }
    if (auto pos = t.find("&END"); pos != std::string_view::npos) {
      header_text += std::string(t.substr(0, pos)) + " ";
      header_done = true;
    } else if (!t.empty() && t.back() == '/') {
      t.remove_suffix(1);
      header_text += std::string(t) + " ";
      header_done = true;
    } else {
      header_text += std::string(t) + " ";
    }
  }
  if (!header_started) throw ParseError(kModule, line_no, "empty input: no FCIDUMP header");
  if (!header_done) throw ParseError(kModule, line_no, "unterminated FCIDUMP header (no &END or '/')");

  const Header h = parse_header(header_text, line_no);
  if (h.nelec > 2 * h.norb) throw ParseError(kModule, line_no, "NELEC exceeds 2*NORB");
  IntegralSet set(h.norb, h.nelec, h.ms2);
  set.set_orbital_symmetry(h.orbsym);

  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 5) {
      throw ParseError(kModule, line_no, "expected 'value i j k l', got " + std::to_string(fields.size()) + " fields");
    }
    double value = 0.0;
    if (!parse_double(fields[0], value)) {
      throw ParseError(kModule, line_no, "non-numeric integral value '" + fields[0] + "'");
    }
    std::array<int, 4> idx{};
    for (int k = 0; k < 4; ++k) {
      if (!parse_int(fields[k + 1], idx[k])) {
        throw ParseError(kModule, line_no, "non-integer index '" + fields[k + 1] + "'");
      }
      if (idx[k] < 0 || idx[k] > h.norb) {
        throw BoundsError(kModule, line_no,
                          "index " + std::to_string(idx[k]) + " outside [0, " + std::to_string(h.norb) + "]");
      }
    }
    const auto [i, j, k, l] = idx;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      set.set_two_body(i - 1, j - 1, k - 1, l - 1, value);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      set.set_one_body(i - 1, j - 1, value);
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      set.set_core_energy(value);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // Orbital energy line; not part of the Hamiltonian.
    } else {
      throw ParseError(kModule, line_no, "unrecognised index pattern");
    }
  }
  return set;
}

IntegralSet parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fcidump(in);
}

IntegralSet read_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(kModule, 0, "cannot open FCIDUMP file '" + path + "'");
  return parse_fcidump(in);
}

std::string format_roundtrip(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string s(buf.data(), ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write_fcidump(std::ostream& out, const IntegralSet& set) {
  const int n = set.n_orbitals();
  out << " &FCI NORB=" << n << ",NELEC=" << set.n_electrons() << ",MS2=" << set.spin_2ms() << ",\n";
  if (!set.orbital_symmetry().empty()) {
    out << "  ORBSYM=";
    for (int s : set.orbital_symmetry()) out << s << ',';
    out << "\n  ISYM=1,\n";
  }
  out << " &END\n";

  // Canonical keys iterate in ascending (p,q,r,s) order.
  for (const auto& [k, v] : set.two_body_entries()) {
    out << format_roundtrip(v) << ' ' << k.p + 1 << ' ' << k.q + 1 << ' ' << k.r + 1 << ' ' << k.s + 1 << '\n';
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      const double v = set.one_body(p, q);
      if (v != 0.0) out << format_roundtrip(v) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  }
  out << format_roundtrip(set.core_energy()) << " 0 0 0 0\n";
}

std::string write_fcidump(const IntegralSet& set) {
  std::ostringstream out;
  write_fcidump(out, set);
  return out.str();
}

}  // namespace qdft
