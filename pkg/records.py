"""Persist experiment records as one JSON document plus a flat CSV of trials."""

import csv
import json
import os

from errors import ConfigError
from experiments import ResultRecord

UNIVERSALITY_CSV_HEADERS = ['trial', 'n', 'seed', 'outcome', 'nodes']
INDEPENDENCE_CSV_HEADERS = ['trial', 'seed', 'restricted', 'difference']
MATROID_CSV_HEADERS = ['kind', 'trial', 'seed', 'value']
BRIDGE_CSV_HEADERS = ['n', 'matroid', 'pivots', 'deletions', 'minors', 'pairs']
ALIGN_CSV_HEADERS = ['trial', 'seed', 'failed', 'edges']
REORDER_CSV_HEADERS = ['trial', 'seed', 'n', 'vhat', 'length', 'replay', 'disjoint',
                       'covers_once', 'gadget']
WALK_CSV_HEADERS = ['step', 'kind', 'linf', 'linf_float', 'bound', 'within']
RAMSEY_CSV_HEADERS = ['kind', 'n', 'failures', 'graph6']
ORACLE_CSV_HEADERS = ['n', 'graph', 'disagreements']

CSV_HEADERS = {
    'universality': UNIVERSALITY_CSV_HEADERS,
    'universality_trend': UNIVERSALITY_CSV_HEADERS,
    'symdiff_independence': INDEPENDENCE_CSV_HEADERS,
    'matroid': MATROID_CSV_HEADERS,
    'matroid_bridge': BRIDGE_CSV_HEADERS,
    'align_partition': ALIGN_CSV_HEADERS,
    'reorder': REORDER_CSV_HEADERS,
    'walk_mix': WALK_CSV_HEADERS,
    'ramsey': RAMSEY_CSV_HEADERS,
    'minor_oracle': ORACLE_CSV_HEADERS,
}


def csv_headers(record):
    """Column order for a record's trial rows."""

    experiment = record.config['experiment']
    if experiment in CSV_HEADERS:
        return CSV_HEADERS[experiment]
    # second-moment rows carry one agreement column per distance
    headers = ['trial', 'seed', 'X']
    for row in record.trials[:1]:
        headers += [key for key in row if key not in headers]
    return headers


def record_paths(output):
    """(json, csv) paths for an output stem such as ``results/run1``."""

    stem, _ = os.path.splitext(output)
    return f"{stem}.json", f"{stem}.csv"


def save_record(record, output):
    json_path, csv_path = record_paths(output)
    directory = os.path.dirname(json_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(json_path, 'w') as record_json:
        json.dump(record.to_dict(), record_json, indent=2, sort_keys=True)

    with open(csv_path, 'w', newline='') as trials_csv:
        trials_writer = csv.DictWriter(trials_csv, fieldnames=csv_headers(record))
        trials_writer.writeheader()
        for row in record.trials:
            trials_writer.writerow(row)

    return json_path, csv_path


def load_record(path):
    with open(path) as record_json:
        data = json.load(record_json)
    try:
        return ResultRecord(data['config'], data['trials'], data['aggregates'],
                            data.get('wall_time', 0.0))
    except KeyError as exc:
        raise ConfigError(f"{path} is not a result record: missing {exc}") from None


def parse_cell(text):
    """Invert csv's str() of a trial value."""

    if text == '':
        return None
    if text in ('True', 'False'):
        return text == 'True'
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def load_trials(path):
    with open(path, newline='') as trials_csv:
        return [{key: parse_cell(value) for key, value in row.items()}
                for row in csv.DictReader(trials_csv)]
