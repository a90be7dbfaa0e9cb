#ifndef REVSPLIT_DATAIO_HPP
#define REVSPLIT_DATAIO_HPP

#include <string>
#include <vector>

#include "revsplit/core.hpp"

namespace revsplit {

// Similarity CSV: header "reviewer_id,<paper ids...>", then one row per
// reviewer with decimal values in [0,1] (9 fractional digits on save).
SimilarityMatrix load_similarity_csv(const std::string& path);
void save_similarity_csv(const SimilarityMatrix& s, const std::string& path);

enum class Bid { Yes, Maybe, NoResponse };

Bid parse_bid(const std::string& token);

// yes -> 1.0, maybe -> 0.5, no_response -> 0.25
SimilarityMatrix bids_to_similarity(const std::vector<std::vector<Bid>>& bids,
                                    const std::vector<std::string>& reviewer_ids = {},
                                    const std::vector<std::string>& paper_ids = {});

// Same shape as the similarity CSV but with yes|maybe|no_response tokens.
SimilarityMatrix load_bids_csv(const std::string& path);

// S_{rp} = |areas_r intersect areas_p| / total_areas
SimilarityMatrix subject_overlap_similarity(const std::vector<std::vector<int>>& reviewer_areas,
                                            const std::vector<std::vector<int>>& paper_areas,
                                            int total_areas);

/// Parsed subject-area file: lines "id,area1;area2;...".
struct AreaList {
    std::vector<std::string> ids;
    std::vector<std::vector<int>> areas;
};

AreaList load_subject_areas(const std::string& path);

// Each reviewer becomes `copies` rows; for paper p only copy p % copies
// keeps the original similarity. copies=1 is the identity.
SimilarityMatrix split_reviewer_copies(const SimilarityMatrix& s, int copies);

// Scores CSV "paper_id,score" joined against s's paper order.
std::vector<double> load_scores(const std::string& path, const SimilarityMatrix& s);

}  // namespace revsplit

#endif
