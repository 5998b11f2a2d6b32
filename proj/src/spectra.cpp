#include "qmaxent/spectra.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qmaxent/numeric.hpp"

namespace qmaxent {

namespace {

constexpr std::int64_t kMaxMaterialize = 1 << 21;

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

std::string family_label(const char* name, std::int64_t n, const char* pname,
                         double param, std::int64_t m = 0) {
  std::ostringstream os;
  os << name << "(N=" << n << "," << pname << "=" << fmt17(param);
  if (m > 0) os << ",m=" << m;
  os << ")";
  return os.str();
}

}  // namespace

Spectrum Spectrum::uniform(std::int64_t n, double e_max, std::int64_t m) {
  require(n >= 2, "uniform: N must be >= 2");
  require(e_max > 0.0, "uniform: e_max must be positive");
  require(m >= 1, "uniform: degeneracy m must be >= 1");
  Spectrum s;
  s.family_ = Family::uniform;
  s.n_ = n;
  s.m_ = m;
  s.param_ = e_max;
  s.e_max_ = e_max;
  s.w_ = static_cast<double>(m) * static_cast<double>(n);
  s.label_ = family_label("uniform", n, "emax", e_max, m);
  return s;
}

Spectrum Spectrum::oscillator(std::int64_t n, double hbar_omega) {
  require(n >= 2, "oscillator: N must be >= 2");
  require(hbar_omega > 0.0, "oscillator: hbar_omega must be positive");
  Spectrum s;
  s.family_ = Family::oscillator;
  s.n_ = n;
  s.param_ = hbar_omega;
  s.e_max_ = (n - 1) * hbar_omega;
  s.w_ = static_cast<double>(n);
  s.label_ = family_label("oscillator", n, "hbar_omega", hbar_omega);
  return s;
}

Spectrum Spectrum::box(std::int64_t n, double gamma) {
  require(n >= 2, "box: N must be >= 2");
  require(gamma > 0.0, "box: gamma must be positive");
  Spectrum s;
  s.family_ = Family::box;
  s.n_ = n;
  s.param_ = gamma;
  s.e_max_ = (static_cast<double>(n) * n - 1.0) * gamma;
  s.w_ = static_cast<double>(n);
  s.label_ = family_label("box", n, "gamma", gamma);
  return s;
}

Spectrum Spectrum::hydrogen(std::int64_t n, double e_ion) {
  require(n >= 2, "hydrogen: N must be >= 2");
  require(e_ion > 0.0, "hydrogen: e_ion must be positive");
  Spectrum s;
  s.family_ = Family::hydrogen;
  s.n_ = n;
  s.param_ = e_ion;
  const double nd = static_cast<double>(n);
  s.e_max_ = (1.0 - 1.0 / (nd * nd)) * e_ion;
  s.w_ = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 3.0;  // sum of 2 n^2
  s.label_ = family_label("hydrogen", n, "e_ion", e_ion);
  return s;
}

Spectrum Spectrum::custom(std::vector<Level> levels, std::string label) {
  require(levels.size() >= 2, "custom: need at least two levels");
  require(levels.front().energy == 0.0, "custom: first level must be exactly 0");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    require(levels[i].degeneracy >= 1, "custom: degeneracies must be >= 1");
    if (i > 0)
      require(levels[i].energy > levels[i - 1].energy,
              "custom: energies must be strictly increasing");
  }
  Spectrum s;
  s.family_ = Family::custom;
  s.n_ = static_cast<std::int64_t>(levels.size());
  s.e_max_ = levels.back().energy;
  KahanSum w;
  for (const Level& l : levels) w.add(static_cast<double>(l.degeneracy));
  s.w_ = w.value();
  s.label_ = std::move(label);
  s.levels_ = std::move(levels);
  return s;
}

double Spectrum::energy(std::int64_t i) const {
  switch (family_) {
    case Family::uniform:
      return static_cast<double>(i) * param_ / static_cast<double>(n_ - 1);
    case Family::oscillator:
      return static_cast<double>(i) * param_;
    case Family::box: {
      const double nd = static_cast<double>(i + 1);
      return (nd * nd - 1.0) * param_;
    }
    case Family::hydrogen: {
      const double nd = static_cast<double>(i + 1);
      return (1.0 - 1.0 / (nd * nd)) * param_;
    }
    case Family::custom:
      return levels_[static_cast<std::size_t>(i)].energy;
  }
  return 0.0;
}

double Spectrum::degeneracy(std::int64_t i) const {
  switch (family_) {
    case Family::uniform:
      return static_cast<double>(m_);
    case Family::oscillator:
    case Family::box:
      return 1.0;
    case Family::hydrogen: {
      const double nd = static_cast<double>(i + 1);
      return 2.0 * nd * nd;
    }
    case Family::custom:
      return static_cast<double>(levels_[static_cast<std::size_t>(i)].degeneracy);
  }
  return 1.0;
}

std::vector<Level> Spectrum::materialize() const {
  if (n_ > kMaxMaterialize)
    throw std::domain_error("Spectrum::materialize: spectrum too large; use streaming access");
  if (family_ == Family::custom) return levels_;
  std::vector<Level> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (std::int64_t i = 0; i < n_; ++i)
    out.push_back({energy(i), static_cast<std::int64_t>(degeneracy(i))});
  return out;
}

EnergySplit split(const Spectrum& spectrum, double u) {
  if (!(u > 0.0) || !(u < spectrum.e_max()))
    throw std::out_of_range("split: U must satisfy 0 < U < e_max");
  // Binary search for the paper's convention e_t < U <= e_{t+1}:
  // t = number of levels with energy strictly below U.
  std::int64_t lo = 0, hi = spectrum.size();  // levels [0, lo) are < U
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (spectrum.energy(mid) < u)
      lo = mid + 1;
    else
      hi = mid;
  }
  return {u, lo};
}

double beta_positivity_margin(const Spectrum& spectrum, double u) {
  KahanSum acc;
  for (std::int64_t i = 0; i < spectrum.size(); ++i)
    acc.add(spectrum.degeneracy(i) * (spectrum.energy(i) - u));
  return acc.value();
}

// ---------------------------------------------------------------------------
// Spectrum definition files (TOML subset)
// ---------------------------------------------------------------------------

namespace {

struct TomlValue {
  enum class Kind { number, string, array } kind = Kind::number;
  double number = 0.0;
  std::string str;
  std::vector<TomlValue> array;
};

class TomlParser {
 public:
  explicit TomlParser(std::string text) : text_(std::move(text)) {}

  TomlValue parse_value() {
    skip_ws();
    if (eof()) fail("unexpected end of value");
    const char c = peek();
    if (c == '[') return parse_array();
    if (c == '"' || c == '\'') return parse_string();
    return parse_number();
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

 private:
  TomlValue parse_array() {
    TomlValue v;
    v.kind = TomlValue::Kind::array;
    ++pos_;  // '['
    skip_ws();
    if (!eof() && peek() == ']') {
      ++pos_;
      return v;
    }
    for (;;) {
      v.array.push_back(parse_value());
      skip_ws();
      if (eof()) fail("unterminated array");
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        if (!eof() && peek() == ']') {  // trailing comma
          ++pos_;
          return v;
        }
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        return v;
      }
      fail("expected ',' or ']' in array");
    }
  }

  TomlValue parse_string() {
    const char quote = peek();
    ++pos_;
    TomlValue v;
    v.kind = TomlValue::Kind::string;
    while (!eof() && peek() != quote) {
      v.str.push_back(peek());
      ++pos_;
    }
    if (eof()) fail("unterminated string");
    ++pos_;
    return v;
  }

  TomlValue parse_number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_'))
      ++pos_;
    std::string tok = text_.substr(start, pos_ - start);
    tok.erase(std::remove(tok.begin(), tok.end(), '_'), tok.end());
    try {
      TomlValue v;
      v.number = std::stod(tok);
      return v;
    } catch (const std::exception&) {
      fail(("bad numeric literal '" + tok + "'").c_str());
    }
    return {};
  }

  [[noreturn]] void fail(const char* msg) {
    throw std::invalid_argument(std::string("spectrum file: ") + msg);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Spectrum load_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("spectrum file: cannot open " + path);

  std::string family;
  std::int64_t n = 0, m = 1;
  double emax = 0.0, hbar_omega = 0.0, gamma = 0.0, e_ion = 0.0;
  std::vector<Level> levels;
  bool have_levels = false;

  std::string line;
  while (std::getline(in, line)) {
    // strip comments outside of strings
    std::string code;
    bool in_str = false;
    char quote = 0;
    for (char c : line) {
      if (in_str) {
        if (c == quote) in_str = false;
      } else if (c == '"' || c == '\'') {
        in_str = true;
        quote = c;
      } else if (c == '#') {
        break;
      }
      code.push_back(c);
    }
    code = strip(code);
    if (code.empty()) continue;
    const std::size_t eq = code.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spectrum file: expected key = value, got '" + code + "'");
    const std::string key = strip(code.substr(0, eq));
    TomlParser parser(code.substr(eq + 1));
    const TomlValue v = parser.parse_value();

    if (key == "family") {
      if (v.kind != TomlValue::Kind::string)
        throw std::invalid_argument("spectrum file: family must be a string");
      family = v.str;
    } else if (key == "levels") {
      if (v.kind != TomlValue::Kind::array)
        throw std::invalid_argument("spectrum file: levels must be an array");
      for (const TomlValue& pair : v.array) {
        if (pair.kind != TomlValue::Kind::array || pair.array.size() != 2)
          throw std::invalid_argument("spectrum file: levels entries must be [energy, degeneracy]");
        levels.push_back({pair.array[0].number,
                          static_cast<std::int64_t>(std::llround(pair.array[1].number))});
      }
      have_levels = true;
    } else if (key == "n") {
      n = static_cast<std::int64_t>(std::llround(v.number));
    } else if (key == "m") {
      m = static_cast<std::int64_t>(std::llround(v.number));
    } else if (key == "emax") {
      emax = v.number;
    } else if (key == "hbar_omega") {
      hbar_omega = v.number;
    } else if (key == "gamma") {
      gamma = v.number;
    } else if (key == "e_ion") {
      e_ion = v.number;
    } else {
      throw std::invalid_argument("spectrum file: unknown key '" + key + "'");
    }
  }

  if (have_levels) return Spectrum::custom(std::move(levels));
  if (family == "uniform") return Spectrum::uniform(n, emax, m);
  if (family == "oscillator") return Spectrum::oscillator(n, hbar_omega);
  if (family == "box") return Spectrum::box(n, gamma);
  if (family == "hydrogen") return Spectrum::hydrogen(n, e_ion);
  throw std::invalid_argument("spectrum file: missing family or levels");
}

}  // namespace qmaxent
