/**
 * Light-weight inspection of the SPARQL text in the editor.
 *
 * The goal is highlighting, not validation: the server owns the grammar.
 * A query's concepts are the objects of its rdf:type patterns and its
 * predicates are the IRIs in predicate position everywhere else, with the
 * structural rdf:type / rdfs:label properties excluded.
 */

export const RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
export const RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label";

export interface QueryElements {
  predicates: Set<string>;
  concepts: Set<string>;
}

const PATTERN =
  /(\?[A-Za-z0-9_]+|<[^<>\s]+>)\s+<([^<>\s]+)>\s+(\?[A-Za-z0-9_]+|<[^<>\s]+>|"(?:[^"\\]|\\.)*")/g;

export function queryElements(sparql: string): QueryElements {
  const predicates = new Set<string>();
  const concepts = new Set<string>();
  for (const match of sparql.matchAll(PATTERN)) {
    const predicate = match[2];
    const object = match[3];
    if (predicate === RDF_TYPE) {
      if (object.startsWith("<")) {
        concepts.add(object.slice(1, -1));
      }
    } else if (predicate !== RDFS_LABEL) {
      predicates.add(predicate);
    }
  }
  return { predicates, concepts };
}

/** Client-side gate before enabling Run; real validation happens server-side. */
export function isRunnable(sparql: string): boolean {
  return sparql.trim().toLowerCase().startsWith("select");
}
