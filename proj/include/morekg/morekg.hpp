#ifndef MOREKG_MOREKG_HPP
#define MOREKG_MOREKG_HPP

#include "morekg/error.hpp"
#include "morekg/numeric.hpp"
#include "morekg/vocab.hpp"
#include "morekg/rdf/term.hpp"
#include "morekg/rdf/graph.hpp"
#include "morekg/rdf/pattern.hpp"
#include "morekg/rdf/prefix_map.hpp"
#include "morekg/serdes/ntriples.hpp"
#include "morekg/serdes/turtle.hpp"
#include "morekg/ontology/schema.hpp"
#include "morekg/ontology/closure.hpp"
#include "morekg/ontology/aliases.hpp"
#include "morekg/ingest/csv.hpp"
#include "morekg/ingest/bundle.hpp"
#include "morekg/ingest/iri.hpp"
#include "morekg/ingest/emit.hpp"
#include "morekg/ingest/fixture.hpp"
#include "morekg/rules/rule.hpp"
#include "morekg/rules/parser.hpp"
#include "morekg/rules/materialize.hpp"
#include "morekg/query/ast.hpp"
#include "morekg/query/parser.hpp"
#include "morekg/query/explain.hpp"
#include "morekg/query/evaluate.hpp"
#include "morekg/query/format.hpp"
#include "morekg/privacy/policy.hpp"
#include "morekg/privacy/view.hpp"

#endif  // MOREKG_MOREKG_HPP
