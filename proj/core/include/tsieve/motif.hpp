// Motif queries: the color pattern a sought temporal path must realize.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace tsieve {

using Vertex = std::int32_t;
using Timestamp = std::int32_t;
using Color = std::int32_t;
using EdgeId = std::int32_t;

enum class QueryKind {
  size_only,               // k-TempPath: any k vertices
  multiset,                // PathMotif / ColorfulPath: color multiset
  ordered_colors,          // VC variants: color tuple, position-exact
  ordered_times_multiset,  // EC-PathMotif: timestamp tuple + color multiset
  ordered_times_only,      // EC-TempPath: timestamp tuple only
};

struct MotifQuery {
  QueryKind kind = QueryKind::size_only;
  int k = 0;                          // total pattern size (vertices)
  std::map<Color, int> multiset;      // color -> multiplicity
  std::vector<Color> order;           // |order| == k
  std::vector<Timestamp> times;       // |times| == k - 1, strictly increasing

  static MotifQuery size_only(int k) {
    MotifQuery q;
    q.kind = QueryKind::size_only;
    q.k = k;
    return q;
  }

  static MotifQuery from_multiset(const std::vector<Color>& colors) {
    MotifQuery q;
    q.kind = QueryKind::multiset;
    q.k = static_cast<int>(colors.size());
    for (Color c : colors) q.multiset[c] += 1;
    return q;
  }

  static MotifQuery from_order(const std::vector<Color>& order) {
    MotifQuery q;
    q.kind = QueryKind::ordered_colors;
    q.k = static_cast<int>(order.size());
    q.order = order;
    for (Color c : order) q.multiset[c] += 1;
    return q;
  }

  static MotifQuery from_times(const std::vector<Timestamp>& times,
                               const std::vector<Color>& colors) {
    MotifQuery q;
    q.kind = colors.empty() ? QueryKind::ordered_times_only
                            : QueryKind::ordered_times_multiset;
    q.k = static_cast<int>(times.size()) + 1;
    q.times = times;
    for (Color c : colors) q.multiset[c] += 1;
    return q;
  }

  bool has_multiset() const {
    return kind == QueryKind::multiset ||
           kind == QueryKind::ordered_times_multiset;
  }
  bool has_times() const {
    return kind == QueryKind::ordered_times_multiset ||
           kind == QueryKind::ordered_times_only;
  }
};

}  // namespace tsieve
