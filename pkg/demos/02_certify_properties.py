"""Run the ten-property certification suite and print the report.

Each property is checked with exact rational arithmetic — containments
and equalities are zero-tolerance symmetric-difference computations, not
numerics.  The one empirical check (orbitwise attraction into the top
triangle) says so in its witness line.
"""

from pam import serialize_reports, standard_map, verify_map

reports = verify_map(standard_map())
print(serialize_reports(reports))

statuses = sorted({r.status for r in reports})
print(f"properties: {len(reports)}, statuses: {', '.join(statuses)}")
