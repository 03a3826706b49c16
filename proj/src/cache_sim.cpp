#include "kdgrid/cache_sim.hpp"

#include <ostream>

namespace kdgrid {

std::uint64_t merge_depth(std::uint64_t m) {
  std::uint64_t d = 0;
  while ((std::uint64_t{1} << d) < m) ++d;
  return d + 1;
}

WorkSpan account(std::span<const WorkSpan> children, Composition how) {
  WorkSpan total;
  for (const auto& c : children) total = how == Composition::parallel ? par({total, c}) : seq({total, c});
  return total;
}

}  // namespace kdgrid

namespace kdgrid::sim {

void CacheConfig::validate() const {
  if (line_entries == 0 || cache_entries == 0) throw ContractViolation("cache and line size must be positive");
  if (cache_entries % line_entries != 0) throw ContractViolation("line size must divide cache size");
  if (cache_entries / line_entries < 2) throw ContractViolation("cache must hold at least two lines");
  if (!(write_cost >= 1.0)) throw ContractViolation("write cost must be >= 1");
}

SimArray::SimArray(Address base, std::vector<std::size_t> extents)
    : base_(base), extents_(std::move(extents)), size_(1) {
  for (auto e : extents_) size_ *= e;
}

std::size_t SimArray::stride(std::size_t d) const {
  std::size_t s = 1;
  for (std::size_t i = d + 1; i < extents_.size(); ++i) s *= extents_[i];
  return s;
}

Address SimArray::address(std::span<const std::size_t> index) const {
  if (index.size() != extents_.size()) throw ContractViolation("index rank does not match array rank");
  Address off = 0;
  for (std::size_t d = 0; d < index.size(); ++d) {
    if (index[d] >= extents_[d]) throw ContractViolation("array index out of bounds");
    off = off * extents_[d] + index[d];
  }
  return base_ + off;
}

Simulator::Simulator(CacheConfig config) : config_(config) {
  config_.validate();
  line_ = config_.line_entries;
  capacity_ = config_.lines();
  slots_.resize(capacity_);
}

SimArray Simulator::allocate_region(std::vector<std::size_t> extents, Value fill, bool temp,
                                    std::string tag) {
  SimArray arr(top_, std::move(extents));
  std::size_t padded = (arr.size() + line_ - 1) / line_ * line_;
  if (padded == 0) padded = line_;
  Address end = top_ + padded;
  if (mem_.size() < end) mem_.resize(end);
  std::fill(mem_.begin() + static_cast<std::ptrdiff_t>(top_),
            mem_.begin() + static_cast<std::ptrdiff_t>(top_ + arr.size()), fill);
  if (where_.size() < end / line_) where_.resize(end / line_, -1);
  regions_.push_back({top_, padded, temp, true, arr, std::move(tag)});
  top_ = end;
  if (temp) {
    live_temp_ += padded;
    peak_temp_ = std::max(peak_temp_, live_temp_);
  }
  return arr;
}

SimArray Simulator::allocate(std::vector<std::size_t> extents, Value fill) {
  return allocate_region(std::move(extents), fill, true, {});
}

SimArray Simulator::allocate_persistent(std::vector<std::size_t> extents, Value fill,
                                        std::string tag) {
  return allocate_region(std::move(extents), fill, false, std::move(tag));
}

void Simulator::release(const SimArray& array) {
  Region* r = nullptr;
  for (auto it = regions_.rbegin(); it != regions_.rend(); ++it) {
    if (it->live && it->base == array.base()) {
      r = &*it;
      break;
    }
  }
  if (!r) throw ContractViolation("release of an array that is not live");
  // Freed lines stay resident but clean, like reused stack memory.
  for (Address l = r->base / line_; l < (r->base + r->span) / line_; ++l)
    if (where_[l] >= 0) slots_[where_[l]].dirty = false;
  r->live = false;
  if (r->temp) live_temp_ -= r->span;
  while (!regions_.empty() && !regions_.back().live) {
    top_ = regions_.back().base;
    regions_.pop_back();
  }
}

Value Simulator::read(const SimArray& array, std::span<const std::size_t> index) {
  return load(array.address(index));
}

void Simulator::write(const SimArray& array, std::span<const std::size_t> index, Value v) {
  store(array.address(index), v);
}

Value Simulator::peek(Address a) const {
  if (a >= top_) throw ContractViolation("peek outside allocated memory");
  return mem_[a];
}

void Simulator::poke(Address a, Value v) {
  if (a >= top_) throw ContractViolation("poke outside allocated memory");
  mem_[a] = v;
}

void Simulator::unlink(std::int32_t s) {
  Slot& x = slots_[s];
  if (x.prev >= 0) slots_[x.prev].next = x.next; else head_ = x.next;
  if (x.next >= 0) slots_[x.next].prev = x.prev; else tail_ = x.prev;
  x.prev = x.next = -1;
}

void Simulator::push_front(std::int32_t s) {
  Slot& x = slots_[s];
  x.prev = -1;
  x.next = head_;
  if (head_ >= 0) slots_[head_].prev = s;
  head_ = s;
  if (tail_ < 0) tail_ = s;
  mru_line_ = x.line;
}

void Simulator::touch_slow(std::uint64_t line, bool dirty) {
  std::int32_t s = where_[line];
  if (s >= 0) {
    unlink(s);
    push_front(s);
    slots_[s].dirty |= dirty;
    return;
  }
  if (!free_.empty()) {
    s = free_.back();
    free_.pop_back();
  } else if (used_ < capacity_) {
    s = static_cast<std::int32_t>(used_++);
  } else {
    s = tail_;
    Slot& victim = slots_[s];
    if (victim.dirty) {
      ++writes_;
      if (trace_) *trace_ << "W " << victim.line << '\n';
    }
    where_[victim.line] = -1;
    unlink(s);
  }
  ++reads_;
  if (trace_) *trace_ << "R " << line << '\n';
  slots_[s].line = line;
  slots_[s].dirty = dirty;
  where_[line] = s;
  push_front(s);
}

void Simulator::drop_line(std::uint64_t line) {
  std::int32_t s = where_[line];
  if (s < 0) return;
  where_[line] = -1;
  unlink(s);
  slots_[s].dirty = false;
  free_.push_back(s);
  if (mru_line_ == line) mru_line_ = head_ >= 0 ? slots_[head_].line : std::numeric_limits<std::uint64_t>::max();
}

CostReport Simulator::flush_and_report(WorkSpan ws) {
  for (std::int32_t s = head_; s >= 0;) {
    std::int32_t next = slots_[s].next;
    if (slots_[s].dirty) {
      ++writes_;
      if (trace_) *trace_ << "W " << slots_[s].line << '\n';
      drop_line(slots_[s].line);
    }
    s = next;
  }
  CostReport r;
  r.read_transfers = reads_;
  r.write_transfers = writes_;
  r.sym_q = reads_ + writes_;
  r.asym_q = static_cast<double>(reads_) + config_.write_cost * static_cast<double>(writes_);
  r.work = ws.work;
  r.span = ws.span;
  r.peak_temp_entries = peak_temp_;
  return r;
}

Location Simulator::locate(Address a) const {
  for (const auto& r : regions_) {
    if (!r.live || a < r.base || a >= r.base + r.array.size()) continue;
    Location loc{r.tag, {}};
    Address off = a - r.base;
    const auto& ext = r.array.extents();
    loc.index.resize(ext.size());
    for (std::size_t d = ext.size(); d-- > 0;) {
      loc.index[d] = off % ext[d];
      off /= ext[d];
    }
    return loc;
  }
  return {};
}

}  // namespace kdgrid::sim
