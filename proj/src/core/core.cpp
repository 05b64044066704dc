#include "ustat/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ustat {

// ---------------------------------------------------------------- samples

Sample::Sample(std::size_t dim, std::vector<double> values, std::vector<int> labels)
    : dim_(dim), values_(std::move(values)), labels_(std::move(labels)) {
    require(dim_ >= 1, ErrorCode::InvalidArgument, "sample dimension must be >= 1");
    require(values_.size() % dim_ == 0, ErrorCode::InvalidArgument,
            "sample values are not a whole number of rows");
    n_ = values_.size() / dim_;
    require(labels_.empty() || labels_.size() == n_, ErrorCode::InvalidArgument,
            "label count does not match the number of observations");
}

Sample Sample::subset(std::span<const std::uint32_t> indices) const {
    std::vector<double> values;
    values.reserve(indices.size() * dim_);
    std::vector<int> labels;
    if (has_labels()) labels.reserve(indices.size());
    for (auto i : indices) {
        require(i < n_, ErrorCode::OutOfRange, "subset index out of range");
        auto r = row(i);
        values.insert(values.end(), r.begin(), r.end());
        if (has_labels()) labels.push_back(labels_[i]);
    }
    return Sample(dim_, std::move(values), std::move(labels));
}

SampleSet::SampleSet(std::vector<Sample> blocks) : blocks_(std::move(blocks)) {
    require(!blocks_.empty(), ErrorCode::EmptyProblem, "a sample set needs at least one block");
    for (const auto& b : blocks_) {
        require(b.size() >= 1, ErrorCode::EmptyProblem, "every block needs at least one observation");
    }
}

SampleSet::SampleSet(Sample block) : SampleSet(std::vector<Sample>{std::move(block)}) {}

std::vector<std::size_t> SampleSet::sizes() const {
    std::vector<std::size_t> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.size());
    return out;
}

std::size_t SampleSet::pooled_size() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.size();
    return n;
}

// ---------------------------------------------------------------- index space

IndexSpace::IndexSpace(std::vector<std::size_t> sizes, std::vector<std::size_t> degrees)
    : sizes_(std::move(sizes)), degrees_(std::move(degrees)) {
    require(!sizes_.empty() && !degrees_.empty(), ErrorCode::EmptyProblem, "index space with K = 0 blocks");
    require(sizes_.size() == degrees_.size(), ErrorCode::InvalidDegrees,
            "sizes and degrees must have the same length");
    offsets_.assign(1, 0);
    cardinality_ = 1;
    min_blocks_ = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
        const auto n = sizes_[k];
        const auto d = degrees_[k];
        require(d >= 1, ErrorCode::InvalidDegrees, "degree must be >= 1 in block " + std::to_string(k));
        require(d <= n, ErrorCode::InvalidDegrees,
                "degree " + std::to_string(d) + " exceeds sample size " + std::to_string(n) + " in block " +
                    std::to_string(k));
        require(n <= std::numeric_limits<std::uint32_t>::max(), ErrorCode::InvalidArgument,
                "sample size exceeds 32-bit index range");
        offsets_.push_back(offsets_.back() + d);
        block_cardinality_.push_back(binomial(n, d));
        cardinality_ *= block_cardinality_.back();
        log_cardinality_ += log_binomial(n, d);
        min_blocks_ = std::min(min_blocks_, n / d);
    }
}

IndexSpace build_index_space(std::vector<std::size_t> sizes, std::vector<std::size_t> degrees) {
    return IndexSpace(std::move(sizes), std::move(degrees));
}

double IndexSpace::log1p_cardinality() const noexcept {
    return log_cardinality_ + std::log1p(std::exp(-log_cardinality_));
}

double IndexSpace::cardinality_double() const { return cardinality_.convert_to<double>(); }

std::optional<std::uint64_t> IndexSpace::cardinality_u64() const {
    if (!fits_u64(cardinality_)) return std::nullopt;
    return cardinality_.convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------- tuples

std::vector<std::uint32_t> IndexTuple::flat() const {
    std::vector<std::uint32_t> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

IndexTuple TupleRef::to_tuple() const {
    IndexTuple t;
    t.blocks.reserve(blocks());
    for (std::size_t k = 0; k < blocks(); ++k) {
        auto b = block(k);
        t.blocks.emplace_back(b.begin(), b.end());
    }
    return t;
}

TupleList::TupleList(const IndexSpace& space, std::vector<std::uint32_t> flat)
    : offsets_(space.offsets()), flat_(std::move(flat)) {
    require(flat_.size() % width() == 0, ErrorCode::InvalidArgument, "flat tuple storage has a partial tuple");
}

void TupleList::push_back(TupleRef t) {
    auto f = t.flat();
    flat_.insert(flat_.end(), f.begin(), f.end());
}

void TupleList::push_back(const IndexTuple& t) {
    require(t.blocks.size() + 1 == offsets_.size(), ErrorCode::InvalidArgument, "tuple has the wrong block count");
    for (std::size_t k = 0; k < t.blocks.size(); ++k) {
        require(t.blocks[k].size() == offsets_[k + 1] - offsets_[k], ErrorCode::InvalidArgument,
                "tuple block has the wrong degree");
        flat_.insert(flat_.end(), t.blocks[k].begin(), t.blocks[k].end());
    }
}

void check_compatible(const SampleSet& samples, const IndexSpace& space) {
    require(samples.sizes() == space.sizes(), ErrorCode::InvalidArgument,
            "index space sizes do not match the sample set");
}

void check_compatible(const Kernel& kernel, const SampleSet& samples, const IndexSpace& space) {
    check_compatible(samples, space);
    require(kernel.degrees() == space.degrees(), ErrorCode::InvalidDegrees,
            "kernel degrees do not match the index space");
}

// ---------------------------------------------------------------- ranking

namespace {

template <class Int>
Int binom_as(std::uint64_t n, std::uint64_t k);

template <>
std::uint64_t binom_as<std::uint64_t>(std::uint64_t n, std::uint64_t k) {
    return binomial_saturating(n, k);
}

template <>
BigInt binom_as<BigInt>(std::uint64_t n, std::uint64_t k) {
    return binomial(n, k);
}

// Lexicographic unranking: at each position pick the largest c such that the
// number of combinations with a smaller element there, C(n-prev-1, j) - C(n-c, j)
// by the hockey-stick identity, does not exceed the remaining rank.
template <class Int>
void unrank_combination_impl(std::uint64_t n, std::uint64_t d, Int rank, std::uint32_t* out) {
    std::int64_t prev = -1;
    for (std::uint64_t i = 0; i < d; ++i) {
        const std::uint64_t j = d - i;
        const std::uint64_t avail = n - static_cast<std::uint64_t>(prev + 1);
        const Int total = binom_as<Int>(avail, j);
        const Int target = total - rank;
        std::uint64_t lo = static_cast<std::uint64_t>(prev + 1);
        std::uint64_t hi = n - j;
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (binom_as<Int>(n - mid, j) >= target) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        rank -= total - binom_as<Int>(n - lo, j);
        out[i] = static_cast<std::uint32_t>(lo);
        prev = static_cast<std::int64_t>(lo);
    }
}

}  // namespace

void unrank_combination(std::uint64_t n, std::uint64_t d, std::uint64_t rank, std::uint32_t* out) {
    unrank_combination_impl<std::uint64_t>(n, d, rank, out);
}

void unrank_combination(std::uint64_t n, std::uint64_t d, const BigInt& rank, std::uint32_t* out) {
    if (fits_u64(binomial(n, d))) {
        unrank_combination_impl<std::uint64_t>(n, d, rank.convert_to<std::uint64_t>(), out);
    } else {
        unrank_combination_impl<BigInt>(n, d, rank, out);
    }
}

BigInt rank_combination(std::uint64_t n, std::span<const std::uint32_t> combo) {
    const std::uint64_t d = combo.size();
    BigInt rank = 0;
    std::int64_t prev = -1;
    for (std::uint64_t i = 0; i < d; ++i) {
        const std::uint64_t j = d - i;
        const std::uint64_t c = combo[i];
        require(static_cast<std::int64_t>(c) > prev && c < n, ErrorCode::InvalidArgument,
                "tuple block is not strictly increasing within range");
        rank += binomial(n - static_cast<std::uint64_t>(prev + 1), j) - binomial(n - c, j);
        prev = static_cast<std::int64_t>(c);
    }
    return rank;
}

void unrank_flat(const IndexSpace& space, const BigInt& rank, std::uint32_t* out) {
    require(rank >= 0 && rank < space.cardinality(), ErrorCode::OutOfRange, "tuple rank out of range");
    if (space.cardinality_u64()) {
        unrank_flat(space, rank.convert_to<std::uint64_t>(), out);
        return;
    }
    BigInt rest = rank;
    for (std::size_t k = space.blocks(); k-- > 0;) {
        const BigInt& ck = space.block_cardinality(k);
        const BigInt block_rank = rest % ck;
        rest /= ck;
        unrank_combination(space.sizes()[k], space.degrees()[k], block_rank, out + space.offsets()[k]);
    }
}

void unrank_flat(const IndexSpace& space, std::uint64_t rank, std::uint32_t* out) {
    auto card = space.cardinality_u64();
    require(card.has_value() && rank < *card, ErrorCode::OutOfRange, "tuple rank out of range");
    for (std::size_t k = space.blocks(); k-- > 0;) {
        const auto ck = space.block_cardinality(k).convert_to<std::uint64_t>();
        unrank_combination(space.sizes()[k], space.degrees()[k], rank % ck, out + space.offsets()[k]);
        rank /= ck;
    }
}

IndexTuple unrank_tuple(const IndexSpace& space, const BigInt& rank) {
    std::vector<std::uint32_t> flat(space.total_degree());
    unrank_flat(space, rank, flat.data());
    return TupleRef(flat.data(), space.offsets()).to_tuple();
}

BigInt rank_tuple(const IndexSpace& space, const IndexTuple& tuple) {
    require(tuple.blocks.size() == space.blocks(), ErrorCode::InvalidArgument, "tuple has the wrong block count");
    BigInt rank = 0;
    for (std::size_t k = 0; k < space.blocks(); ++k) {
        require(tuple.blocks[k].size() == space.degrees()[k], ErrorCode::InvalidArgument,
                "tuple block has the wrong degree");
        rank = rank * space.block_cardinality(k) + rank_combination(space.sizes()[k], tuple.blocks[k]);
    }
    return rank;
}

// ---------------------------------------------------------------- enumeration

namespace {

void check_cap(const IndexSpace& space, std::uint64_t cap) {
    if (space.cardinality() > BigInt(cap)) {
        fail(ErrorCode::CapExceeded, "index space has " + space.cardinality().str() +
                                         " tuples, above the enumeration cap of " + std::to_string(cap) +
                                         "; use an incomplete estimator instead");
    }
}

// Next d-subset of [0, n) in lexicographic order; false on wrap-around.
bool next_combination(std::uint32_t* c, std::size_t d, std::size_t n) {
    for (std::size_t i = d; i-- > 0;) {
        if (c[i] < n - d + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

TupleEnumerator::TupleEnumerator(const IndexSpace& space, std::uint64_t cap) : TupleEnumerator(space, 0, cap) {}

TupleEnumerator::TupleEnumerator(const IndexSpace& space, std::uint64_t start, std::uint64_t cap)
    : space_(&space), state_(space.total_degree()) {
    check_cap(space, cap);
    unrank_flat(space, start, state_.data());
}

bool TupleEnumerator::advance() {
    const auto& offsets = space_->offsets();
    for (std::size_t k = space_->blocks(); k-- > 0;) {
        std::uint32_t* c = state_.data() + offsets[k];
        const std::size_t d = space_->degrees()[k];
        if (next_combination(c, d, space_->sizes()[k])) return true;
        std::iota(c, c + d, 0u);
    }
    return false;
}

bool TupleEnumerator::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        return true;
    }
    if (!advance()) done_ = true;
    return !done_;
}

std::vector<IndexTuple> enumerate_tuples(const IndexSpace& space, std::uint64_t cap) {
    std::vector<IndexTuple> out;
    for_each_tuple(space, [&](TupleRef t) { out.push_back(t.to_tuple()); }, cap);
    return out;
}

}  // namespace ustat
