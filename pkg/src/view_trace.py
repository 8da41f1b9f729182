from minpart.views.trace_view import SearchTraceView
from argparse import ArgumentParser, Namespace

def main() -> None:
    arguments: Namespace = get_command_line_arguments()
    trace_view: SearchTraceView = SearchTraceView()
    trace_view.read_from_file(arguments.trace)
    trace_view.display()


def get_command_line_arguments() -> Namespace:
  parser: ArgumentParser = ArgumentParser(prog="minpart-lab - View Search Trace", description="A simple script to view the progress of a saved pole search.")

  parser.add_argument("trace", type=str, help="Path to a search.json result or a saved trace")

  return parser.parse_args()


if __name__ == "__main__":
    main()
