#include "hyperreal/filters.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <thread>

#include "hyperreal/error.hpp"

namespace hyperreal::filters {

GroundSet::GroundSet(int size) : size_(size) {
  if (size < 1 || size > kMaxSize) {
    throw Error(ErrorKind::InvalidArgument,
                "ground set size must be between 1 and " + std::to_string(kMaxSize));
  }
}

Subset make_subset(std::initializer_list<int> elements) {
  unsigned s = 0;
  for (int e : elements) s |= 1u << e;
  return static_cast<Subset>(s);
}

std::vector<int> elements_of(Subset s) {
  std::vector<int> out;
  for (int i = 0; i < 8; ++i) {
    if (s & (1u << i)) out.push_back(i);
  }
  return out;
}

SetFamily::SetFamily(GroundSet ground) : ground_(ground) {}

SetFamily::SetFamily(GroundSet ground, const std::vector<Subset>& members) : ground_(ground) {
  for (Subset s : members) insert(s);
}

void SetFamily::insert(Subset s) {
  if ((s & ~ground_.full()) != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "subset has elements outside a ground set of size " +
                    std::to_string(ground_.size()));
  }
  bits_.set(s);
}

SetFamily SetFamily::powerset(GroundSet g) {
  SetFamily f(g);
  for (unsigned s = 0; s < g.subset_count(); ++s) f.bits_.set(s);
  return f;
}

SetFamily SetFamily::whole(GroundSet g) {
  SetFamily f(g);
  f.insert(g.full());
  return f;
}

SetFamily SetFamily::principal(GroundSet g, int i) {
  SetFamily f(g);
  for (unsigned s = 0; s < g.subset_count(); ++s) {
    if (s & (1u << i)) f.bits_.set(s);
  }
  return f;
}

SetFamily SetFamily::cofinite(GroundSet g) {
  // I - S is a subset of a finite set, hence finite, for every S.
  return powerset(g);
}

std::vector<Subset> SetFamily::members() const {
  std::vector<Subset> out;
  for (unsigned s = 0; s < ground_.subset_count(); ++s) {
    if (bits_.test(s)) out.push_back(static_cast<Subset>(s));
  }
  return out;
}

std::vector<std::vector<int>> SetFamily::sorted_lists() const {
  std::vector<std::vector<int>> out;
  for (Subset s : members()) out.push_back(elements_of(s));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool intersection_closed(const SetFamily& f, const std::vector<Subset>& members) {
  for (Subset a : members) {
    for (Subset b : members) {
      if (!f.contains(static_cast<Subset>(a & b))) return false;
    }
  }
  return true;
}

bool superset_closed(const SetFamily& f, const std::vector<Subset>& members) {
  const GroundSet& g = f.ground();
  for (Subset a : members) {
    for (unsigned b = 0; b < g.subset_count(); ++b) {
      if ((a & b) == a && !f.contains(static_cast<Subset>(b))) return false;
    }
  }
  return true;
}

bool has_dichotomy(const SetFamily& f) {
  const GroundSet& g = f.ground();
  for (unsigned a = 0; a < g.subset_count(); ++a) {
    if (!f.contains(static_cast<Subset>(a)) && !f.contains(g.complement(static_cast<Subset>(a)))) {
      return false;
    }
  }
  return true;
}

SetFamily family_from_mask(GroundSet g, std::uint64_t mask) {
  SetFamily f(g);
  for (unsigned s = 0; s < g.subset_count(); ++s) {
    if (mask >> s & 1u) f.insert(static_cast<Subset>(s));
  }
  return f;
}

// Bit S of the result is bit (I - S) of `mask`: the family of complements.
std::uint32_t complement_family(std::uint32_t mask, unsigned subsets) {
  std::uint32_t v = mask;
  v = ((v >> 1) & 0x55555555u) | ((v & 0x55555555u) << 1);
  v = ((v >> 2) & 0x33333333u) | ((v & 0x33333333u) << 2);
  v = ((v >> 4) & 0x0F0F0F0Fu) | ((v & 0x0F0F0F0Fu) << 4);
  v = ((v >> 8) & 0x00FF00FFu) | ((v & 0x00FF00FFu) << 8);
  v = (v >> 16) | (v << 16);
  return v >> (32 - subsets);
}

// Scans masks [begin, end) of the middle bits; I is forced in and the empty
// set forced out since every proper filter has both properties.
std::vector<std::uint32_t> scan_range(GroundSet g, std::uint64_t begin, std::uint64_t end) {
  const unsigned subsets = g.subset_count();
  const std::uint32_t all = subsets == 32 ? 0xFFFFFFFFu : ((1u << subsets) - 1u);
  const std::uint32_t top = 1u << (subsets - 1);
  std::vector<std::uint32_t> hits;
  for (std::uint64_t middle = begin; middle < end; ++middle) {
    const std::uint32_t mask = static_cast<std::uint32_t>(middle << 1) | top;
    // Dichotomy with exclusivity: exactly one of S, I - S is in the family.
    if ((mask ^ complement_family(mask, subsets)) != all) continue;
    hits.push_back(mask);
  }
  return hits;
}

std::vector<SetFamily> exhaustive(GroundSet g) {
  const unsigned subsets = g.subset_count();
  std::vector<SetFamily> out;
  if (subsets == 2) {
    // Size 1: families over {{}, {0}}.
    for (std::uint64_t mask = 0; mask < 4; ++mask) {
      SetFamily f = family_from_mask(g, mask);
      if (classify_family(f).is_ultrafilter) out.push_back(f);
    }
    return out;
  }
  const std::uint64_t count = std::uint64_t{1} << (subsets - 2);
  const unsigned workers =
      count < (1u << 16) ? 1u : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<std::vector<std::uint32_t>>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    jobs.push_back(std::async(std::launch::async, scan_range, g, begin, end));
  }
  for (auto& job : jobs) {
    for (std::uint32_t mask : job.get()) {
      SetFamily f = family_from_mask(g, mask);
      if (classify_family(f).is_ultrafilter) out.push_back(f);
    }
  }
  return out;
}

std::vector<SetFamily> by_generator(GroundSet g) {
  std::vector<SetFamily> out;
  for (unsigned a = 1; a < g.subset_count(); ++a) {
    SetFamily f = generate_filter(SetFamily(g, {static_cast<Subset>(a)}));
    if (classify_family(f).is_ultrafilter &&
        std::find(out.begin(), out.end(), f) == out.end()) {
      out.push_back(f);
    }
  }
  return out;
}

}  // namespace

FamilyReport classify_family(const SetFamily& f) {
  FamilyReport r;
  const auto members = f.members();
  r.is_filter = !members.empty() && intersection_closed(f, members) && superset_closed(f, members);
  r.is_proper = !f.contains(0);
  r.is_ultrafilter = r.is_filter && r.is_proper && has_dichotomy(f);
  for (int i = 0; i < f.ground().size(); ++i) {
    if (f == SetFamily::principal(f.ground(), i)) {
      r.principal_generator = i;
      break;
    }
  }
  return r;
}

SetFamily generate_filter(const SetFamily& seed) {
  const GroundSet& g = seed.ground();
  SetFamily f = seed;
  f.insert(g.full());
  for (bool changed = true; changed;) {
    changed = false;
    const auto members = f.members();
    for (Subset a : members) {
      for (Subset b : members) {
        const Subset both = static_cast<Subset>(a & b);
        if (!f.contains(both)) {
          f.insert(both);
          changed = true;
        }
      }
      for (unsigned b = 0; b < g.subset_count(); ++b) {
        if ((a & b) == a && !f.contains(static_cast<Subset>(b))) {
          f.insert(static_cast<Subset>(b));
          changed = true;
        }
      }
    }
  }
  return f;
}

std::vector<SetFamily> enumerate_ultrafilters(GroundSet g, EnumerationMode mode) {
  std::vector<SetFamily> out;
  if (mode == EnumerationMode::Exhaustive) {
    if (g.size() > GroundSet::kMaxExhaustiveSize) {
      throw Error(ErrorKind::InvalidArgument,
                  "exhaustive enumeration is limited to ground sets of size " +
                      std::to_string(GroundSet::kMaxExhaustiveSize));
    }
    out = exhaustive(g);
  } else {
    out = by_generator(g);
  }
  std::sort(out.begin(), out.end(), [](const SetFamily& a, const SetFamily& b) {
    return a.sorted_lists() < b.sorted_lists();
  });
  return out;
}

}  // namespace hyperreal::filters
