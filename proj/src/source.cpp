#include "autoseq/source.hpp"

#include "autoseq/error.hpp"
#include "autoseq/kernels.hpp"

namespace autoseq {

SequenceSource::SequenceSource(std::string id, Alphabet alphabet, std::uint64_t first_index, Generator generator,
                               std::optional<std::size_t> available)
    : id_(std::move(id)),
      alphabet_(std::move(alphabet)),
      first_index_(first_index),
      generator_(std::move(generator)),
      available_(available),
      binding_(id_) {}

SequencePrefix SequenceSource::prefix(std::size_t count) const {
  if (available_ && count > *available_)
    throw Error(ErrorKind::InsufficientData, "source '" + id_ + "' holds " + std::to_string(*available_) +
                                                 " symbols, " + std::to_string(count) + " requested");
  SequencePrefix p;
  p.source_id = id_;
  p.alphabet = alphabet_;
  p.data = generator_(count);
  if (p.data.size() != count)
    throw Error(ErrorKind::InsufficientData, "source '" + id_ + "' produced " + std::to_string(p.data.size()) +
                                                 " of " + std::to_string(count) + " symbols");
  return p;
}

SequenceSource fixed_source(const SequencePrefix& prefix, std::uint64_t first_index) {
  auto data = prefix.data;
  return SequenceSource(
      prefix.source_id, prefix.alphabet, first_index,
      [data = std::move(data)](std::size_t count) {
        return FiniteWord(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(count));
      },
      prefix.size());
}

std::vector<DioSample> dio_profile(const SequenceSource& source, const std::vector<std::uint64_t>& lengths,
                                   const RepetitionCaps& caps) {
  if (lengths.empty()) return {};
  const auto prefix = source.prefix(static_cast<std::size_t>(lengths.back()));
  return parallel::dio_profile(prefix.view(), lengths, caps);
}

}  // namespace autoseq
