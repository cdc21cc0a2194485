#include "setstab/builtins.hpp"

#include <cctype>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "setstab/errors.hpp"
#include "setstab/structure.hpp"

namespace setstab {

PermGroup trivial_group(int n) { return PermGroup(n); }

PermGroup symmetric_group(int n) {
  if (n < 1) fail(Err::BadInput, "degree must be positive");
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(Perm::from_cycles(n, {{0, 1}}));
  if (n >= 3) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    gens.push_back(Perm::from_images(img));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup alternating_group(int n) {
  if (n < 1) fail(Err::BadInput, "degree must be positive");
  std::vector<Perm> gens;
  if (n >= 3) gens.push_back(Perm::from_cycles(n, {{0, 1, 2}}));
  if (n >= 4) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    if (n % 2 == 1) {
      for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    } else {
      for (int i = 1; i < n; ++i) img[i] = i % (n - 1) + 1;
    }
    gens.push_back(Perm::from_images(img));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup cyclic_group(int n) {
  if (n < 1) fail(Err::BadInput, "degree must be positive");
  if (n == 1) return trivial_group(1);
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return PermGroup(n, {Perm::from_images(img)});
}

namespace {

int gf8_mul_t(int x) { // multiply by t modulo t^3 + t + 1, bit-pattern labels
  int y = x << 1;
  if (y & 8) y ^= 0b1011;
  return y;
}

} // namespace

PermGroup affine_line(int q) {
  if (q == 8) {
    std::vector<int> add1(8), mult(8);
    for (int x = 0; x < 8; ++x) add1[x] = x ^ 1;
    for (int x = 0; x < 8; ++x) mult[x] = gf8_mul_t(x);
    return PermGroup(8, {Perm::from_images(add1), Perm::from_images(mult)});
  }
  if (q != 2 && q != 3 && q != 5 && q != 7) fail(Err::BadInput, "affine line wants q in {2,3,5,7,8}");
  std::vector<int> add1(q);
  for (int x = 0; x < q; ++x) add1[x] = (x + 1) % q;
  std::vector<Perm> gens{Perm::from_images(add1)};
  // smallest primitive root
  for (int r = 2; r < q; ++r) {
    int v = 1, ord = 0;
    do {
      v = v * r % q;
      ++ord;
    } while (v != 1);
    if (ord == q - 1) {
      std::vector<int> mul(q);
      for (int x = 0; x < q; ++x) mul[x] = x * r % q;
      gens.push_back(Perm::from_images(mul));
      break;
    }
  }
  return PermGroup(q, std::move(gens));
}

PermGroup affine_semilinear_line_8() {
  PermGroup base = affine_line(8);
  std::vector<int> frob(8);
  for (int x = 0; x < 8; ++x) {
    int sq = 0; // x*x in GF(8)
    int a = x;
    for (int bit = 0; bit < 3; ++bit) {
      if (x & (1 << bit)) sq ^= a;
      a = gf8_mul_t(a);
    }
    frob[x] = sq;
  }
  std::vector<Perm> gens = base.generators();
  gens.push_back(Perm::from_images(frob));
  return PermGroup(8, std::move(gens));
}

PermGroup affine_plane_3() {
  auto pt = [](int x, int y) { return 3 * ((x % 3 + 3) % 3) + (y % 3 + 3) % 3; };
  auto from_map = [&](auto f) {
    std::vector<int> img(9);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) img[pt(x, y)] = f(x, y);
    return Perm::from_images(img);
  };
  Perm t1 = from_map([&](int x, int y) { return pt(x + 1, y); });
  Perm t2 = from_map([&](int x, int y) { return pt(x, y + 1); });
  Perm s = from_map([&](int x, int y) { return pt(2 * y, x); });      // det 1
  Perm t = from_map([&](int x, int y) { return pt(x + y, y); });      // det 1
  Perm d = from_map([&](int x, int y) { return pt(2 * x, y); });      // det 2
  return PermGroup(9, {t1, t2, s, t, d});
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(Err::BadInput, std::string("expected '") + c + "' in group expression");
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (pos == start) fail(Err::BadInput, "expected a name in group expression");
    return s.substr(start, pos - start);
  }

  int number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail(Err::BadInput, "expected a number in group expression");
    return std::stoi(s.substr(start, pos - start));
  }

  PermGroup expr() {
    skip_ws();
    if (pos < s.size() && s[pos] == '@') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && s[pos] != ',' && s[pos] != ')') ++pos;
      std::string path = s.substr(start, pos - start);
      while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
      return from_file(path);
    }
    std::string name = ident();
    if (name == "wr_imp" || name == "wr_prod") {
      expect('(');
      PermGroup a = expr();
      expect(',');
      PermGroup b = expr();
      expect(')');
      return name == "wr_imp" ? wreath_imprimitive(a, b) : wreath_product_action(a, b);
    }
    if (name == "agammal1") {
      if (eat(':') && number() != 8) fail(Err::BadInput, "semilinear affine line is only built over GF(8)");
      return affine_semilinear_line_8();
    }
    if (name == "agl2") {
      if (eat(':') && number() != 3) fail(Err::BadInput, "affine plane is only built over GF(3)");
      return affine_plane_3();
    }
    expect(':');
    int n = number();
    if (name == "trivial") return trivial_group(n);
    if (name == "sym") return symmetric_group(n);
    if (name == "alt") return alternating_group(n);
    if (name == "cyc") return cyclic_group(n);
    if (name == "agl1") return affine_line(n);
    fail(Err::BadInput, "unknown group name: " + name);
  }

  static PermGroup from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::BadInput, "cannot open group file: " + path);
    nlohmann::json j;
    in >> j;
    int degree = j.at("degree").get<int>();
    std::vector<Perm> gens;
    for (const auto& images : j.at("generators")) gens.push_back(Perm::from_images(images.get<std::vector<int>>()));
    for (const Perm& g : gens)
      if (g.degree() != degree) fail(Err::DegreeMismatch, "generator degree mismatch in " + path);
    return PermGroup(degree, std::move(gens));
  }
};

} // namespace

PermGroup parse_group(const std::string& expr) {
  Parser p{expr};
  PermGroup g = p.expr();
  p.skip_ws();
  if (p.pos != expr.size()) fail(Err::BadInput, "trailing input in group expression");
  return g;
}

} // namespace setstab
