import click
from dvrgeom.commands.check_smooth import check_smooth
from dvrgeom.commands.find_hyperplane import find_hyperplane
from dvrgeom.commands.classify import classify
from dvrgeom.commands.resolve import resolve
from dvrgeom.commands.find_pencil import find_pencil
from dvrgeom.commands.verify_pencil import verify_pencil
from dvrgeom.commands.find_hypersurface import find_hypersurface
from dvrgeom.commands.dual_table import dual_table


@click.group()
@click.version_option(prog_name="dvrgeom")
def main():
    """
    dvrgeom: Exact smoothness, Bertini, blow-up and Lefschetz checks over
    finite fields and truncated DVRs.
    """


# Add all commands to the main group
main.add_command(check_smooth)
main.add_command(find_hyperplane)
main.add_command(classify)
main.add_command(resolve)
main.add_command(find_pencil)
main.add_command(verify_pencil)
main.add_command(find_hypersurface)
main.add_command(dual_table)


if __name__ == "__main__":
    main()
