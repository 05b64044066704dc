#pragma once

// Data model shared by every module: K-sample data sets, the index space of
// admissible tuples, tuples themselves and the kernel interface.
//
// Indices are 0-based everywhere, including file formats and CLI output.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ustat/combinatorics.hpp"
#include "ustat/error.hpp"
#include "ustat/rng.hpp"

namespace ustat {

// Default refusal threshold for full enumeration of an index space.
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

// One block of observations: n rows of equal dimension, optional integer labels.
class Sample {
public:
    Sample() = default;
    Sample(std::size_t dim, std::vector<double> values, std::vector<int> labels = {});

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }
    bool has_labels() const noexcept { return !labels_.empty(); }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    int label(std::size_t i) const { return labels_[i]; }

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<int>& labels() const noexcept { return labels_; }

    // Rows picked by `indices`, in that order.
    Sample subset(std::span<const std::uint32_t> indices) const;

    bool operator==(const Sample&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> values_;
    std::vector<int> labels_;
};

class SampleSet {
public:
    SampleSet() = default;
    explicit SampleSet(std::vector<Sample> blocks);
    // Single-block convenience.
    explicit SampleSet(Sample block);

    std::size_t blocks() const noexcept { return blocks_.size(); }
    const Sample& block(std::size_t k) const { return blocks_[k]; }
    std::vector<std::size_t> sizes() const;
    // Pooled size n = n_1 + ... + n_K.
    std::size_t pooled_size() const;

    bool operator==(const SampleSet&) const = default;

private:
    std::vector<Sample> blocks_;
};

// The set of admissible index tuples for sample sizes (n_1..n_K) and degrees
// (d_1..d_K). Immutable.
class IndexSpace {
public:
    IndexSpace(std::vector<std::size_t> sizes, std::vector<std::size_t> degrees);

    std::size_t blocks() const noexcept { return sizes_.size(); }
    const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
    const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
    // Prefix sums of the degrees; offsets()[k] is where block k starts in a flat tuple.
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    std::size_t total_degree() const noexcept { return offsets_.back(); }

    const BigInt& cardinality() const noexcept { return cardinality_; }
    const BigInt& block_cardinality(std::size_t k) const { return block_cardinality_[k]; }
    double log_cardinality() const noexcept { return log_cardinality_; }
    // ln(1 + #Lambda), the quantity entering the deviation bounds.
    double log1p_cardinality() const noexcept;
    double cardinality_double() const;
    std::optional<std::uint64_t> cardinality_u64() const;

    // N = min_k floor(n_k / d_k).
    std::size_t min_blocks() const noexcept { return min_blocks_; }

    bool operator==(const IndexSpace& other) const {
        return sizes_ == other.sizes_ && degrees_ == other.degrees_;
    }

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> degrees_;
    std::vector<std::size_t> offsets_;
    std::vector<BigInt> block_cardinality_;
    BigInt cardinality_;
    double log_cardinality_ = 0.0;
    std::size_t min_blocks_ = 0;
};

IndexSpace build_index_space(std::vector<std::size_t> sizes, std::vector<std::size_t> degrees);

// Owning tuple in canonical form: each block strictly increasing.
struct IndexTuple {
    std::vector<std::vector<std::uint32_t>> blocks;

    std::vector<std::uint32_t> flat() const;
    auto operator<=>(const IndexTuple&) const = default;
};

// Non-owning view of a tuple stored flat (blocks concatenated).
class TupleRef {
public:
    TupleRef(const std::uint32_t* data, const std::vector<std::size_t>& offsets)
        : data_(data), offsets_(&offsets) {}

    std::size_t blocks() const noexcept { return offsets_->size() - 1; }
    std::span<const std::uint32_t> block(std::size_t k) const {
        return {data_ + (*offsets_)[k], (*offsets_)[k + 1] - (*offsets_)[k]};
    }
    std::span<const std::uint32_t> flat() const { return {data_, offsets_->back()}; }
    std::uint32_t operator[](std::size_t i) const { return data_[i]; }

    IndexTuple to_tuple() const;

private:
    const std::uint32_t* data_;
    const std::vector<std::size_t>* offsets_;
};

// Flat storage for a sequence of tuples of one index space.
class TupleList {
public:
    explicit TupleList(const IndexSpace& space) : offsets_(space.offsets()) {}
    TupleList(const IndexSpace& space, std::vector<std::uint32_t> flat);

    std::size_t size() const noexcept { return width() == 0 ? 0 : flat_.size() / width(); }
    bool empty() const noexcept { return flat_.empty(); }
    std::size_t width() const noexcept { return offsets_.back(); }
    TupleRef operator[](std::size_t i) const { return TupleRef(flat_.data() + i * width(), offsets_); }

    void push_back(TupleRef t);
    void push_back(const IndexTuple& t);
    void reserve(std::size_t tuples) { flat_.reserve(tuples * width()); }
    const std::vector<std::uint32_t>& flat() const noexcept { return flat_; }
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> flat_;
};

// A real-valued function of one observation tuple; symmetric within each block.
// Symmetry is assumed, not checked.
class Kernel {
public:
    virtual ~Kernel() = default;
    virtual std::vector<std::size_t> degrees() const = 0;
    virtual double operator()(const SampleSet& samples, TupleRef tuple) const = 0;
    // Declared uniform bound M_H >= sup |H|, if known.
    virtual std::optional<double> bound() const { return std::nullopt; }
};

class FunctionKernel final : public Kernel {
public:
    using Fn = std::function<double(const SampleSet&, TupleRef)>;
    FunctionKernel(std::vector<std::size_t> degrees, Fn fn, std::optional<double> bound = std::nullopt)
        : degrees_(std::move(degrees)), fn_(std::move(fn)), bound_(bound) {}

    std::vector<std::size_t> degrees() const override { return degrees_; }
    double operator()(const SampleSet& samples, TupleRef tuple) const override { return fn_(samples, tuple); }
    std::optional<double> bound() const override { return bound_; }

private:
    std::vector<std::size_t> degrees_;
    Fn fn_;
    std::optional<double> bound_;
};

// Throws unless samples, space and kernel agree on K, sizes and degrees.
void check_compatible(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space);
void check_compatible(const SampleSet& samples, const IndexSpace& space);

// Lexicographic walk over the index space (block 0 most significant).
class TupleEnumerator {
public:
    explicit TupleEnumerator(const IndexSpace& space, std::uint64_t cap = kDefaultEnumerationCap);
    // Starts at the tuple of rank `start`.
    TupleEnumerator(const IndexSpace& space, std::uint64_t start, std::uint64_t cap);

    // Advances; returns false once the space is exhausted. The first call
    // positions on the starting tuple.
    bool next();
    TupleRef current() const { return TupleRef(state_.data(), space_->offsets()); }

private:
    bool advance();

    const IndexSpace* space_;
    std::vector<std::uint32_t> state_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<IndexTuple> enumerate_tuples(const IndexSpace& space, std::uint64_t cap = kDefaultEnumerationCap);

template <class Fn>
void for_each_tuple(const IndexSpace& space, Fn&& fn, std::uint64_t cap = kDefaultEnumerationCap) {
    TupleEnumerator it(space, cap);
    while (it.next()) fn(it.current());
}

IndexTuple unrank_tuple(const IndexSpace& space, const BigInt& rank);
BigInt rank_tuple(const IndexSpace& space, const IndexTuple& tuple);

// Per-block lexicographic (un)ranking of d-subsets of [0, n); rank < C(n, d)
// must fit in 64 bits. `out` receives d strictly increasing indices.
void unrank_combination(std::uint64_t n, std::uint64_t d, std::uint64_t rank, std::uint32_t* out);
void unrank_combination(std::uint64_t n, std::uint64_t d, const BigInt& rank, std::uint32_t* out);
BigInt rank_combination(std::uint64_t n, std::span<const std::uint32_t> combo);

// Writes the tuple of rank `rank` into `out` (flat, total_degree entries).
void unrank_flat(const IndexSpace& space, const BigInt& rank, std::uint32_t* out);
void unrank_flat(const IndexSpace& space, std::uint64_t rank, std::uint32_t* out);

}  // namespace ustat
