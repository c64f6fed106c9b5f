import argparse
from os import path as osp

from jointsparse.experiments import crossing_curve, load_phase_csv, plot_phase_svg, write_cell_csv


def main(args):
    """Summarize a phase-transition CSV: 50% crossings per method and k."""
    grid = load_phase_csv(args.csv)
    if grid.records.empty:
        print(f'{args.csv} holds no trials.')
        return
    methods = grid.methods
    for method, lam in methods:
        curve = crossing_curve(grid, method, lam)
        print(f'{method} (lambda={lam:g})')
        for k in grid.k_values:
            if k in curve.m50:
                print(f'\tk={k:3d}: m50 = {curve.m50[k]:7.3f}, m50/k = {curve.m50[k] / k:.3f}')
            else:
                print(f'\tk={k:3d}: unbracketed')
        for k, m in curve.monotonicity_flags:
            print(f'\tk={k:3d}: success fraction drops beyond 2 sigma at m={m}')

    stem = osp.splitext(args.csv)[0]
    if args.cells:
        write_cell_csv(grid, f'{stem}_cells.csv')
    if args.svg:
        plot_phase_svg(grid, f'{stem}.svg', methods=methods)


if __name__ == '__main__':
    parser = argparse.ArgumentParser()
    parser.add_argument('--csv', type=str, required=True, help='Per-trial CSV written by "jointsparse phase".')
    parser.add_argument('--cells', action='store_true', help='Also write the per-cell summary with Wilson bounds.')
    parser.add_argument('--svg', action='store_true', help='Also redraw the SVG heatmap.')
    args = parser.parse_args()
    main(args)
