#include "mtlambda/tables.hpp"

#include <algorithm>
#include <cctype>

namespace mtlambda {

namespace {

const ExtendedInt kInf = ExtendedInt::infinity();

KnownRow row(int group, std::uint64_t p, std::vector<std::string> forms, std::vector<ExtendedInt> values,
             std::string pattern) {
  return {group, p, std::move(forms), std::move(values), std::move(pattern)};
}

std::vector<KnownRow> build() {
  std::vector<KnownRow> r;
  // p = 2
  r.push_back(row(0, 2, {"20a"}, {kInf, 1, kInf, 7, 9, 31, 33}, "2^{m-1} - 1 (m even); 2^{m-2} + 1 (m odd)"));
  r.push_back(row(0, 2, {"24a", "48a"}, {kInf, 1, 3, 7, 15, 31, 63}, "2^{m-1} - 1"));
  r.push_back(row(0, 2, {"32a"}, {kInf, 1, 2, 6, 14, 30, 62}, "2^{m-1} - 2"));
  r.push_back(row(0, 2, {"36a", "56a"}, {kInf, kInf, 2, 4, 8, 16, 32}, "2^{m-2}"));
  r.push_back(row(0, 2, {"40a"}, {kInf, kInf, 3, kInf, 15, 17, 63}, "2^{m-2} + 1 (m even); 2^{m-1} - 1 (m odd)"));
  r.push_back(row(0, 2, {"44a"}, {kInf, 1, 3, 5, 11, 21, 43}, "q_m (m even); q_m + 1 (m odd)"));
  r.push_back(row(0, 2, {"52a"}, {kInf, 1, 3, 7, 11, 31, 35}, "2^{m-1} - 1 (m even); 2^{m-2} + 3 (m odd)"));
  r.push_back(row(0, 2, {"64a"}, {kInf, 1, 3, 4, 10, 22, 46}, "3 * 2^{m-3} - 2"));
  // p = 3
  r.push_back(row(1, 3, {"27a", "54a"}, {1, 7, 25, 79, 241, 727, 2185}, "3^m - 2"));
  r.push_back(row(1, 3, {"36a", "54b", "90a", "90b", "108a"}, {2, 8, 26, 80, 242, 728, 2186}, "3^m - 1"));
  r.push_back(row(1, 3, {"45a", "63a", "72a", "90c", "99a", "99b", "99d"}, {1, 3, 9, 27, 81, 243, 729}, "3^{m-1}"));
  r.push_back(row(1, 3, {"99c"}, {kInf, 6, 18, 54, 162, 486, 1458}, "2 * 3^{m-1}"));
  r.push_back(row(1, 3, {"153a"}, {1, kInf, 11, 39, 101, 309, 911},
                  "3^{m-1} + q_{m-1} + 6 (m even); 3^{m-1} + q_{m-1} (m odd)"));
  r.push_back(row(1, 3, {"153c"}, {kInf, 5, 21, 47, 147, 425, 1281},
                  "3^{m-1} + q_m (m even); 3^{m-1} + q_m + 6 (m odd)"));
  r.push_back(row(1, 3, {"153d"}, {2, 6, 20, 60, 182, 546, 1640}, "q_{m+1}"));
  // p = 5
  r.push_back(row(2, 5, {"50b", "75c"}, {4, 24, 124, 624, 3124}, "5^m - 1"));
  r.push_back(row(2, 5, {"75b", "100a", "150c"}, {2, 10, 50, 250, 1250}, "2 * 5^{m-1}"));
  r.push_back(row(2, 5, {"50a", "75a", "150b", "175c"}, {3, 15, 75, 375, 1875}, "3 * 5^{m-1}"));
  r.push_back(row(2, 5, {"175b"}, {4, 12, 52, 252, 1252}, "2 * 5^{m-1} + 2"));
  r.push_back(row(2, 5, {"175a"}, {2, 6, 26, 126, 626}, "5^{m-1} + 1"));
  r.push_back(row(2, 5, {"150a"}, {1, 5, 25, 125, 625}, "5^{m-1}"));
  r.push_back(row(2, 5, {"225a"}, {1, 8, 37, 188, 937},
                  "5^{m-1} + 3 q_{m-1} + 3 (m even); 5^{m-1} + 3 q_{m-1} (m odd)"));
  r.push_back(row(2, 5, {"225b"}, {4, 17, 88, 437, 2188},
                  "3 * 5^{m-1} + 3 q_{m-1} + 2 (m even); 3 * 5^{m-1} + 3 q_{m-1} + 1 (m odd)"));
  // p = 7
  r.push_back(row(3, 7, {"49a", "245b", "294e", "294f", "392b", "441a"}, {5, 35, 245, 1715}, "5 * 7^{m-1}"));
  r.push_back(row(3, 7, {"98a", "147a", "294c", "392d"}, {3, 21, 147, 1029}, "3 * 7^{m-1}"));
  r.push_back(row(3, 7, {"147b", "196b", "294a", "392e", "441e"}, {4, 28, 196, 1372}, "4 * 7^{m-1}"));
  r.push_back(row(3, 7, {"147c", "294b"}, {1, 7, 49, 343}, "7^{m-1}"));
  r.push_back(row(3, 7, {"245a", "294d", "294g", "441d"}, {2, 14, 98, 686}, "2 * 7^{m-1}"));
  r.push_back(row(3, 7, {"196a", "392f"}, {2, 8, 50, 344}, "7^{m-1} + 1"));
  r.push_back(row(3, 7, {"245c", "392a", "441c"}, {4, 22, 148, 1030}, "3 * 7^{m-1} + 1"));
  r.push_back(row(3, 7, {"392c", "441b"}, {3, 15, 99, 687}, "2 * 7^{m-1} + 1"));
  r.push_back(row(3, 7, {"441f"}, {3, 9, 51, 345}, "7^{m-1} + 2"));
  // delta
  r.push_back(row(4, 2, {"delta"}, {0, 1, 3, 6, 14, 30, 62}, "2^{m-1} - 2"));
  r.push_back(row(4, 3, {"delta"}, {1, 7, 25, 79, 241, 727}, "3^m - 2"));
  r.push_back(row(4, 5, {"delta"}, {4, 24, 124, 624}, "5^m - 1"));
  r.push_back(row(4, 7, {"delta"}, {6, 48, 342}, "7^m - 1"));
  return r;
}

}  // namespace

const std::vector<KnownRow>& published_rows() {
  static const std::vector<KnownRow> rows = build();
  return rows;
}

std::string isogeny_class_of(const std::string& label) {
  const std::size_t last = label.find_last_not_of("0123456789");
  if (last == std::string::npos || !std::isalpha(static_cast<unsigned char>(label[last]))) return label;
  return label.substr(0, last + 1);
}

std::optional<KnownRow> find_published_row(const std::string& label, std::uint64_t p) {
  const std::string cls = isogeny_class_of(label);
  for (const KnownRow& r : published_rows()) {
    if (r.p != p) continue;
    if (std::find(r.forms.begin(), r.forms.end(), cls) != r.forms.end()) return r;
  }
  return std::nullopt;
}

}  // namespace mtlambda
