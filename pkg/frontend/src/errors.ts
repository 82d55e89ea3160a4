/** Human rendering for every service error code.
 *
 * Each code gets its own wording and placement hint so no screen ever falls
 * back to dumping a JSON body at the user.
 */

import type { ErrorBody } from "./types.js";

export type ErrorPlacement = "field" | "banner";

export interface ErrorRendering {
  headline: string;
  details: string[];
  placement: ErrorPlacement;
  /** Banner errors that invalidate the local session picture. */
  resync: boolean;
}

export function describeError(body: ErrorBody): ErrorRendering {
  switch (body.code) {
    case "parse_error": {
      const where =
        body.line !== undefined && body.column !== undefined
          ? ` (line ${body.line}, column ${body.column})`
          : "";
      const details: string[] = [];
      if (body.expected && body.expected.length) {
        details.push(`Expected: ${body.expected.join(", ")}`);
      }
      return {
        headline: `That does not parse${where}: ${body.message}`,
        details,
        placement: "field",
        resync: false,
      };
    }
    case "validation_error": {
      const details = (body.violations ?? []).map((v) => {
        const line = v.line !== null && v.line !== undefined ? ` (line ${v.line})` : "";
        return `${v.invariant}: ${v.message}${line}`;
      });
      return {
        headline: "The model is not well-formed yet.",
        details,
        placement: "field",
        resync: false,
      };
    }
    case "unknown_atom":
      return {
        headline: `The formula names an atom the model does not declare: ${body.message}`,
        details: [],
        placement: "field",
        resync: false,
      };
    case "unknown_agent":
      return {
        headline: `The coalition names an agent the model does not have: ${body.message}`,
        details: [],
        placement: "field",
        resync: false,
      };
    case "unknown_model_class":
      return {
        headline: `The model type is not supported: ${body.message}`,
        details: [],
        placement: "field",
        resync: false,
      };
    case "no_capable_checker":
      return {
        headline: `No registered checker can handle this combination: ${body.message}`,
        details: [],
        placement: "field",
        resync: false,
      };
    case "bad_request":
      return {
        headline: `The service rejected the submission: ${body.message}`,
        details: [],
        placement: "field",
        resync: false,
      };
    case "phase_mismatch":
      return {
        headline: "This session moved on; the screen was out of step and has been refreshed.",
        details: [body.message],
        placement: "banner",
        resync: true,
      };
    case "unknown_session":
      return {
        headline: "This session no longer exists (it may have expired). Start over to continue.",
        details: [],
        placement: "banner",
        resync: false,
      };
    case "conflict":
      return {
        headline: "The session is busy with another request; try again in a moment.",
        details: [],
        placement: "banner",
        resync: false,
      };
    default:
      return {
        headline: `Something went wrong on the service side: ${body.message}`,
        details: [],
        placement: "banner",
        resync: false,
      };
  }
}

/** "state S1: no target for (A, C)" lines for the inline missing-vector list. */
export function missingVectorLines(body: ErrorBody): string[] {
  return (body.missing_vectors ?? []).map(
    (mv) => `state ${mv.state}: no target for (${mv.actions.join(", ")})`,
  );
}
