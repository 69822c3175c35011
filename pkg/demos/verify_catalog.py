"""Verify every catalog entry, raw and curated, and show what the errata fix."""
from borderrank.catalog import entry_ids, load_entry, load_entry_with_report
from borderrank.verify import verify_border_rank


def main():
    for entry in entry_ids():
        raw = verify_border_rank(load_entry(entry, errata=None))
        alg, report = load_entry_with_report(entry)
        cur = verify_border_rank(alg)
        print(f"{entry:14s} raw {raw.status} ({raw.residual_entries()} residual)  curated {cur.status}  r={cur.r} h={cur.order}")
        for line in report.lines():
            print("    " + line)
        for note in alg.notes:
            print("    note: " + note)


if __name__ == "__main__":
    main()
