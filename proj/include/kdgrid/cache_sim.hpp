#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "kdgrid/errors.hpp"
#include "kdgrid/work_span.hpp"

namespace kdgrid::sim {

using Value = double;
using Address = std::uint64_t;

inline constexpr Value kInf = std::numeric_limits<Value>::infinity();

struct CacheConfig {
  std::size_t cache_entries = 256;  // M
  std::size_t line_entries = 8;     // B
  double write_cost = 1.0;          // omega

  // Throws ContractViolation unless B divides M, M/B >= 2 and omega >= 1.
  void validate() const;
  [[nodiscard]] std::size_t lines() const { return cache_entries / line_entries; }
};

struct CostReport {
  std::uint64_t read_transfers = 0;
  std::uint64_t write_transfers = 0;
  std::uint64_t sym_q = 0;
  double asym_q = 0.0;
  std::uint64_t work = 0;
  std::uint64_t span = 0;
  std::uint64_t peak_temp_entries = 0;
};

// Handle to a row-major region of simulated memory.
class SimArray {
 public:
  SimArray() = default;
  SimArray(Address base, std::vector<std::size_t> extents);

  [[nodiscard]] Address base() const { return base_; }
  [[nodiscard]] const std::vector<std::size_t>& extents() const { return extents_; }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t rank() const { return extents_.size(); }
  // Row-major stride of dimension d.
  [[nodiscard]] std::size_t stride(std::size_t d) const;

  // Bounds-checked; throws ContractViolation.
  [[nodiscard]] Address address(std::span<const std::size_t> index) const;
  [[nodiscard]] Address address(std::initializer_list<std::size_t> index) const {
    return address(std::span<const std::size_t>(index.begin(), index.size()));
  }

 private:
  Address base_ = 0;
  std::vector<std::size_t> extents_;
  std::size_t size_ = 0;
};

// Input reads are the ones a cell consumes; update reads fetch an
// accumulator or merge operand. Only input reads reach the read observer.
enum class Access { input, update };

struct Location {
  std::string tag;
  std::vector<std::size_t> index;
};

// Fully associative LRU cache in front of a flat simulated memory.
// Write-back, write-allocate; a write miss fetches the line first.
class Simulator {
 public:
  explicit Simulator(CacheConfig config);

  [[nodiscard]] const CacheConfig& config() const { return config_; }

  // Temporary allocation. Counts toward peak_temp_entries. Contents start
  // equal to `fill` and cold; allocating costs no transfers.
  SimArray allocate(std::vector<std::size_t> extents, Value fill = 0.0);
  // Input/output storage; excluded from the temporary high-water mark.
  SimArray allocate_persistent(std::vector<std::size_t> extents, Value fill = 0.0,
                               std::string tag = {});
  // Discards the region's dirty state without charging write-backs. Its
  // lines stay cached, so space reused by a later allocation can hit.
  void release(const SimArray& array);

  Value read(const SimArray& array, std::span<const std::size_t> index);
  Value read(const SimArray& array, std::initializer_list<std::size_t> index) {
    return load(array.address(index));
  }
  void write(const SimArray& array, std::span<const std::size_t> index, Value v);
  void write(const SimArray& array, std::initializer_list<std::size_t> index, Value v) {
    store(array.address(index), v);
  }

  // Unchecked hot path used by the kernels.
  Value load(Address a, Access kind = Access::input) {
    touch(a / line_, false);
    if (observer_ && kind == Access::input) observer_(a, mem_[a]);
    return mem_[a];
  }
  void store(Address a, Value v) {
    touch(a / line_, true);
    mem_[a] = v;
  }

  // Uncharged access for loading inputs and extracting results.
  [[nodiscard]] Value peek(Address a) const;
  void poke(Address a, Value v);

  // Writes back and evicts every dirty line, then reports totals so far.
  CostReport flush_and_report(WorkSpan ws = {});

  [[nodiscard]] std::uint64_t read_transfers() const { return reads_; }
  [[nodiscard]] std::uint64_t write_transfers() const { return writes_; }
  [[nodiscard]] std::uint64_t peak_temp_entries() const { return peak_temp_; }
  [[nodiscard]] std::uint64_t live_temp_entries() const { return live_temp_; }
  [[nodiscard]] std::size_t resident_lines() const { return used_ - free_.size(); }

  // Emits "R <line>" / "W <line>" per transfer.
  void set_trace(std::ostream* out) { trace_ = out; }
  void set_read_observer(std::function<void(Address, Value)> f) { observer_ = std::move(f); }
  // Maps an address back to the tagged persistent array holding it.
  [[nodiscard]] Location locate(Address a) const;

 private:
  struct Slot {
    std::uint64_t line = 0;
    std::int32_t prev = -1;
    std::int32_t next = -1;
    bool dirty = false;
  };
  struct Region {
    Address base;
    std::size_t span;  // line-padded
    bool temp;
    bool live;
    SimArray array;
    std::string tag;
  };

  void touch(std::uint64_t line, bool dirty) {
    if (line == mru_line_) {
      slots_[head_].dirty |= dirty;
      return;
    }
    touch_slow(line, dirty);
  }
  void touch_slow(std::uint64_t line, bool dirty);
  void unlink(std::int32_t s);
  void push_front(std::int32_t s);
  void drop_line(std::uint64_t line);
  SimArray allocate_region(std::vector<std::size_t> extents, Value fill, bool temp,
                           std::string tag);

  CacheConfig config_;
  std::size_t line_;
  std::size_t capacity_;
  std::vector<Value> mem_;
  std::vector<std::int32_t> where_;  // line -> slot, -1 if absent
  std::vector<Slot> slots_;
  std::vector<std::int32_t> free_;
  std::size_t used_ = 0;
  std::int32_t head_ = -1;
  std::int32_t tail_ = -1;
  std::uint64_t mru_line_ = std::numeric_limits<std::uint64_t>::max();

  std::vector<Region> regions_;
  Address top_ = 0;
  std::uint64_t live_temp_ = 0;
  std::uint64_t peak_temp_ = 0;

  std::uint64_t reads_ = 0;
  std::uint64_t writes_ = 0;
  std::ostream* trace_ = nullptr;
  std::function<void(Address, Value)> observer_;
};

}  // namespace kdgrid::sim
