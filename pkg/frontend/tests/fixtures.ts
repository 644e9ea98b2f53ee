import { QueryResponse, ResultRow } from "../src/types.js";

// Recorded service responses used as rendering fixtures.

export const FIG9_CONTEXT =
  "om residents with recently installed urea-formaldehyde foam insulation who complained of " +
  "formaldehyde odor, irritation, or increased pre-existing illness patterns. In 40/55 homes " +
  "investigated, the most common symptoms were tearing of the eyes, sore throat, cough, and " +
  "runny nose. Air samples were collected in 22 homes. In 14 homes where formaldehyde was " +
  "detected, levels ranged from 0.01 to 0.78 ppm. In New Hampshire,";

export const FIG9_ANSWER = "tearing of the eyes, sore throat, cough, and runny nose";

export const fig9Row: ResultRow = {
  index: 0,
  answer: FIG9_ANSWER,
  type: "extractive",
  score: 0.967710733,
  context: FIG9_CONTEXT,
  meta: { name: "Report of the Federal Panel on Formaldehyde" },
  offsets_in_document: { start: 97127, end: 97182 },
  offsets_in_context: { start: 223, end: 278 },
  doc_id: "FED9",
};

export const secondRow: ResultRow = {
  index: 1,
  answer: "wheezing episodes, asthma exacerbations",
  type: "extractive",
  score: 0.885707617,
  context:
    "Clinical findings consisted of wheezing episodes, asthma exacerbations in infants below the age of two years.",
  offsets_in_document: { start: 1874, end: 1913 },
  offsets_in_context: { start: 31, end: 70 },
  meta: { name: "Frequency and clinical relevance of bocavirus infection" },
  doc_id: "BOCA1",
};

export const extraRows: ResultRow[] = [2, 3, 4].map((i) => ({
  index: i,
  answer: "fever",
  type: "extractive",
  score: 0.5 - i * 0.05,
  context: `Study ${i} reported fever in most participants.`,
  offsets_in_document: { start: 317, end: 322 },
  offsets_in_context: { start: 17, end: 22 },
  meta: { name: `Study ${i}` },
  doc_id: `S${i}`,
}));

export const recordedResponse: QueryResponse = {
  answers: [fig9Row, secondRow, ...extraRows],
};

export const noAnswerResponse: QueryResponse = {
  answers: [
    {
      index: 0,
      answer: "",
      type: "no_answer",
      score: 0,
      context: "",
      meta: {},
      offsets_in_document: { start: 0, end: 0 },
      offsets_in_context: { start: 0, end: 0 },
      doc_id: "",
    },
  ],
};
