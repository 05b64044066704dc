#include "ustat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "ustat/csv.hpp"

namespace ustat {

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::WithReplacement: return "with_replacement";
        case Scheme::WithoutReplacement: return "without_replacement";
        case Scheme::Bernoulli: return "bernoulli";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "with_replacement" || name == "swr") return Scheme::WithReplacement;
    if (name == "without_replacement" || name == "swor") return Scheme::WithoutReplacement;
    if (name == "bernoulli") return Scheme::Bernoulli;
    fail(ErrorCode::Config, "unknown sampling scheme '" + std::string(name) + "'");
}

namespace {

double equal_inclusion_probability(const IndexSpace& space, std::uint64_t b) {
    if (auto card = space.cardinality_u64()) return static_cast<double>(b) / static_cast<double>(*card);
    return std::exp(std::log(static_cast<double>(b)) - space.log_cardinality());
}

void check_canonical(const IndexSpace& space, const TupleList& terms) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
        auto tuple = terms[t];
        for (std::size_t k = 0; k < space.blocks(); ++k) {
            auto block = tuple.block(k);
            for (std::size_t i = 0; i < block.size(); ++i) {
                require(block[i] < space.sizes()[k] && (i == 0 || block[i - 1] < block[i]), ErrorCode::InvalidArgument,
                        "term " + std::to_string(t) + " is not a canonical in-range tuple");
            }
        }
    }
}

// Tuples for a set of distinct ranks, emitted in increasing rank order.
TupleList tuples_from_ranks(const IndexSpace& space, std::vector<std::uint64_t> ranks) {
    std::sort(ranks.begin(), ranks.end());
    TupleList out(space);
    std::vector<std::uint32_t> buf(space.total_degree());
    out.reserve(ranks.size());
    for (auto r : ranks) {
        unrank_flat(space, r, buf.data());
        out.push_back(TupleRef(buf.data(), space.offsets()));
    }
    return out;
}

// Floyd's algorithm: exactly `b` distinct values from [0, population).
std::vector<std::uint64_t> floyd_subset(std::uint64_t population, std::uint64_t b, Rng& rng) {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(b * 2);
    std::vector<std::uint64_t> out;
    out.reserve(b);
    for (std::uint64_t j = population - b; j < population; ++j) {
        const std::uint64_t t = rng.uniform_below(j + 1);
        const std::uint64_t pick = chosen.insert(t).second ? t : j;
        if (pick == j) chosen.insert(j);
        out.push_back(pick);
    }
    return out;
}

TupleList uniform_subset(const IndexSpace& space, std::uint64_t b, Rng& rng) {
    if (auto card = space.cardinality_u64()) return tuples_from_ranks(space, floyd_subset(*card, b, rng));

    // Astronomically large space: rejection on ranks; b is necessarily far below #Lambda / 2.
    std::set<BigInt> ranks;
    while (ranks.size() < b) ranks.insert(uniform_below(rng, space.cardinality()));
    TupleList out(space);
    out.reserve(b);
    std::vector<std::uint32_t> buf(space.total_degree());
    for (const auto& r : ranks) {
        unrank_flat(space, r, buf.data());
        out.push_back(TupleRef(buf.data(), space.offsets()));
    }
    return out;
}

}  // namespace

TermSet::TermSet(Scheme scheme, IndexSpace space, TupleList terms, std::uint64_t requested_b, std::uint64_t seed)
    : scheme_(scheme),
      space_(std::move(space)),
      terms_(std::move(terms)),
      requested_b_(requested_b),
      inclusion_probability_(equal_inclusion_probability(space_, requested_b)),
      seed_(seed) {
    require(terms_.offsets() == space_.offsets(), ErrorCode::InvalidArgument, "terms do not belong to this space");
    if (scheme_ != Scheme::Bernoulli) {
        require(terms_.size() == requested_b_, ErrorCode::InvalidArgument,
                "fixed-size designs must hold exactly B terms");
    }
    check_canonical(space_, terms_);
}

TermSet sample_with_replacement(const IndexSpace& space, std::uint64_t b, Rng& rng) {
    require(b >= 1, ErrorCode::InvalidArgument, "with-replacement sampling needs B >= 1");
    std::vector<bool> small(space.blocks());
    std::vector<std::uint64_t> block_card(space.blocks(), 0);
    for (std::size_t k = 0; k < space.blocks(); ++k) {
        small[k] = fits_u64(space.block_cardinality(k));
        if (small[k]) block_card[k] = space.block_cardinality(k).convert_to<std::uint64_t>();
    }
    // Independent uniform block ranks give a uniform rank over the product space.
    std::vector<std::uint32_t> flat(b * space.total_degree());
    for (std::uint64_t t = 0; t < b; ++t) {
        std::uint32_t* out = flat.data() + t * space.total_degree();
        for (std::size_t k = 0; k < space.blocks(); ++k) {
            const auto n = space.sizes()[k];
            const auto d = space.degrees()[k];
            std::uint32_t* dst = out + space.offsets()[k];
            if (!small[k]) {
                unrank_combination(n, d, uniform_below(rng, space.block_cardinality(k)), dst);
            } else if (d == 1) {
                dst[0] = static_cast<std::uint32_t>(rng.uniform_below(n));
            } else {
                unrank_combination(n, d, rng.uniform_below(block_card[k]), dst);
            }
        }
    }
    return TermSet(Scheme::WithReplacement, space, TupleList(space, std::move(flat)), b, rng.seed());
}

TermSet sample_without_replacement(const IndexSpace& space, std::uint64_t b, Rng& rng) {
    require(b >= 1, ErrorCode::InvalidArgument, "without-replacement sampling needs B >= 1");
    require(BigInt(b) <= space.cardinality(), ErrorCode::InvalidArgument,
            "B = " + std::to_string(b) + " exceeds #Lambda = " + space.cardinality().str());
    return TermSet(Scheme::WithoutReplacement, space, uniform_subset(space, b, rng), b, rng.seed());
}

TermSet sample_bernoulli(const IndexSpace& space, std::uint64_t expected_b, Rng& rng) {
    require(expected_b >= 1, ErrorCode::InvalidArgument, "Bernoulli sampling needs an expected size > 0");
    require(BigInt(expected_b) <= space.cardinality(), ErrorCode::InvalidArgument,
            "inclusion probability B / #Lambda exceeds 1");
    const double pi = equal_inclusion_probability(space, expected_b);
    auto card = space.cardinality_u64();

    if (card && *card <= kBernoulliLoopCap) {
        TupleList out(space);
        TupleEnumerator it(space, *card);
        while (it.next()) {
            if (pi >= 1.0 || rng.uniform01() < pi) out.push_back(it.current());
        }
        return TermSet(Scheme::Bernoulli, space, std::move(out), expected_b, rng.seed());
    }

    std::uint64_t count = 0;
    if (card && *card <= static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
        std::binomial_distribution<long long> dist(static_cast<long long>(*card), pi);
        count = static_cast<std::uint64_t>(dist(rng.engine()));
    } else {
        // Binomial(#Lambda, B/#Lambda) with #Lambda beyond 2^63 is Poisson(B) to double precision.
        std::poisson_distribution<long long> dist(static_cast<double>(expected_b));
        count = static_cast<std::uint64_t>(dist(rng.engine()));
    }
    TupleList out = count == 0 ? TupleList(space) : uniform_subset(space, count, rng);
    return TermSet(Scheme::Bernoulli, space, std::move(out), expected_b, rng.seed());
}

TermSet sample_terms(Scheme scheme, const IndexSpace& space, std::uint64_t b, Rng& rng) {
    switch (scheme) {
        case Scheme::WithReplacement: return sample_with_replacement(space, b, rng);
        case Scheme::WithoutReplacement: return sample_without_replacement(space, b, rng);
        case Scheme::Bernoulli: return sample_bernoulli(space, b, rng);
    }
    fail(ErrorCode::InvalidArgument, "unknown scheme");
}

TermSet full_termset(const IndexSpace& space, std::uint64_t cap) {
    TupleList all(space);
    for_each_tuple(space, [&](TupleRef t) { all.push_back(t); }, cap);
    const auto b = static_cast<std::uint64_t>(all.size());
    return TermSet(Scheme::WithoutReplacement, space, std::move(all), b, 0);
}

void write_termset(std::ostream& out, const TermSet& terms) {
    out << "scheme,seed,B\n" << scheme_name(terms.scheme()) << ',' << terms.seed() << ',' << terms.requested_b()
        << '\n';
    for (std::size_t t = 0; t < terms.size(); ++t) {
        auto tuple = terms[t];
        for (std::size_t k = 0; k < tuple.blocks(); ++k) {
            if (k) out << ';';
            auto block = tuple.block(k);
            for (std::size_t i = 0; i < block.size(); ++i) out << (i ? "," : "") << block[i];
        }
        out << '\n';
    }
}

TermSet read_termset(std::istream& in, const IndexSpace& space) {
    std::string line;
    std::size_t number = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++number;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };
    require(next_line() && line == "scheme,seed,B", ErrorCode::ParseError, "term set: missing 'scheme,seed,B' header");
    require(next_line(), ErrorCode::ParseError, "term set: missing metadata row");
    std::istringstream meta_line(line);
    const auto meta = csv::read_rows(meta_line);
    require(meta.size() == 1 && meta[0].fields.size() == 3, ErrorCode::ParseError,
            "term set: metadata row must be scheme,seed,B");
    const Scheme scheme = parse_scheme(meta[0].fields[0]);
    const auto seed = static_cast<std::uint64_t>(csv::parse_int(meta[0].fields[1], number, 1));
    const auto b = static_cast<std::uint64_t>(csv::parse_int(meta[0].fields[2], number, 2));

    TupleList terms(space);
    std::vector<std::uint32_t> flat(space.total_degree());
    while (next_line()) {
        std::size_t pos = 0;
        std::size_t k = 0;
        std::size_t filled = 0;
        std::size_t column = 0;
        while (pos <= line.size()) {
            const auto stop = line.find_first_of(",;", pos);
            const std::string field = line.substr(pos, stop == std::string::npos ? std::string::npos : stop - pos);
            const auto value = csv::parse_int(field, number, column++);
            require(value >= 0 && filled < flat.size(), ErrorCode::ParseError,
                    "term set: malformed tuple at line " + std::to_string(number));
            flat[filled++] = static_cast<std::uint32_t>(value);
            if (stop == std::string::npos) break;
            if (line[stop] == ';') {
                ++k;
                require(k < space.blocks() && filled == space.offsets()[k], ErrorCode::ParseError,
                        "term set: block sizes do not match the degrees at line " + std::to_string(number));
            }
            pos = stop + 1;
        }
        require(filled == flat.size() && k + 1 == space.blocks(), ErrorCode::ParseError,
                "term set: tuple width does not match the space at line " + std::to_string(number));
        terms.push_back(TupleRef(flat.data(), space.offsets()));
    }
    return TermSet(scheme, space, std::move(terms), b, seed);
}

}  // namespace ustat
