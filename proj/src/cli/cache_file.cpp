#include "fibdir/cli/cache_file.hpp"

#include "fibdir/fibonacci.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fibdir::cli {
namespace {

std::uint64_t parse_u64(std::string_view text, std::size_t line, std::string_view field)
{
    std::uint64_t out = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw CacheFormatError(line, "bad integer in field " + std::string(field) + ": '" + std::string(text) + "'");
    }
    return out;
}

BigInt parse_big(std::string_view text, std::size_t line)
{
    if (text.empty() || !std::ranges::all_of(text, [](char c) { return c >= '0' && c <= '9'; })) {
        throw CacheFormatError(line, "bad prime '" + std::string(text) + "'");
    }
    return BigInt(std::string(text));
}

Factorization parse_factors(std::string_view text, std::size_t line)
{
    if (text == "1") {
        return {};
    }
    std::vector<PrimePower> factors;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const auto caret = item.find('^');
        if (caret == std::string_view::npos) {
            throw CacheFormatError(line, "factor '" + std::string(item) + "' is not of the form p^e");
        }
        const auto e = parse_u64(item.substr(caret + 1), line, "factors");
        if (e == 0 || e > 1'000'000) {
            throw CacheFormatError(line, "exponent out of range in '" + std::string(item) + "'");
        }
        factors.push_back({parse_big(item.substr(0, caret), line), static_cast<unsigned>(e)});
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    try {
        return Factorization(std::move(factors));
    } catch (const std::invalid_argument& e) {
        throw CacheFormatError(line, e.what());
    }
}

}  // namespace

std::string format_record(const CacheRecord& record)
{
    std::ostringstream os;
    os << "n=" << record.n << " factors=";
    if (record.fib_factorization.is_one()) {
        os << '1';
    } else {
        const auto& fs = record.fib_factorization.factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            os << (i ? "," : "") << fs[i].prime.get_str() << '^' << fs[i].exponent;
        }
    }
    os << " rank=" << record.rank << " entry_exponent=" << record.entry_exponent;
    return os.str();
}

CacheRecord parse_record(std::string_view line, std::size_t line_number)
{
    static constexpr std::string_view kKeys[] = {"n=", "factors=", "rank=", "entry_exponent="};
    std::string_view fields[4];
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (line.substr(pos, kKeys[i].size()) != kKeys[i]) {
            throw CacheFormatError(line_number, "expected field '" + std::string(kKeys[i]) + "'");
        }
        pos += kKeys[i].size();
        const auto space = line.find(' ', pos);
        fields[i] = line.substr(pos, space == std::string_view::npos ? std::string_view::npos : space - pos);
        if (i < 3 && space == std::string_view::npos) {
            throw CacheFormatError(line_number, "record ends before field '" + std::string(kKeys[i + 1]) + "'");
        }
        if (i == 3 && space != std::string_view::npos) {
            throw CacheFormatError(line_number, "trailing data after entry_exponent");
        }
        pos = space + 1;
    }
    CacheRecord rec;
    rec.n = parse_u64(fields[0], line_number, "n");
    rec.fib_factorization = parse_factors(fields[1], line_number);
    rec.rank = parse_u64(fields[2], line_number, "rank");
    const auto e = parse_u64(fields[3], line_number, "entry_exponent");
    if (rec.n < 2 || rec.rank == 0 || e == 0 || e > 64) {
        throw CacheFormatError(line_number, "n must be >= 2, rank and entry_exponent positive");
    }
    rec.entry_exponent = static_cast<unsigned>(e);
    return rec;
}

std::optional<std::string> validate_record(const CacheRecord& record)
{
    if (record.fib_factorization.value() != fib(record.n)) {
        return "factors do not multiply to a_" + std::to_string(record.n);
    }
    for (const auto& pp : record.fib_factorization.factors()) {
        if (!is_prime(pp.prime)) {
            return pp.prime.get_str() + " is not prime";
        }
    }
    const BigInt n = big_from_u64(record.n);
    if (fib_mod(record.rank, n) != 0) {
        return "n does not divide a_rank";
    }
    for (std::uint64_t q : prime_divisors(record.rank)) {
        if (fib_mod(record.rank / q, n) == 0) {
            return "rank is not minimal";
        }
    }
    const BigInt power = pow_ui(n, record.entry_exponent);
    if (fib_mod(record.rank, power) != 0 || fib_mod(record.rank, power * n) == 0) {
        return "entry_exponent is not the exact power of n in a_rank";
    }
    return std::nullopt;
}

std::vector<CacheRecord> parse_cache(std::string_view text)
{
    std::vector<CacheRecord> out;
    std::size_t line_number = 0;
    while (!text.empty()) {
        ++line_number;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        CacheRecord rec = parse_record(line, line_number);
        if (auto problem = validate_record(rec)) {
            throw CacheFormatError(line_number, *problem);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::string format_cache(std::vector<CacheRecord> records)
{
    std::ranges::sort(records, {}, &CacheRecord::n);
    std::string out = "# fibdir cache v1: n, factorization of a_n, rank of n, entry exponent of n\n";
    for (const auto& rec : records) {
        out += format_record(rec);
        out += '\n';
    }
    return out;
}

std::vector<CacheRecord> read_cache(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open cache file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cache(buf.str());
}

void write_cache(const std::filesystem::path& path, const std::vector<CacheRecord>& records)
{
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write cache file " + tmp.string());
        }
        out << format_cache(records);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace fibdir::cli
