#include "findfile.h"

ff_stack_T *ff_create_stack_element(char *fix_part, char *wc_part, int level, int star_star_empty)
{
  ff_stack_T *new = xmalloc(sizeof(ff_stack_T));

  new->ffs_prev = NULL;
  new->ffs_filearray = NULL;
  new->ffs_filearray_size = 0;
  new->ffs_filearray_cur = 0;
  new->ffs_stage = 0;
  new->ffs_level = level;
  new->ffs_star_star_empty = star_star_empty;

  if (fix_part == NULL) {
    fix_part = "";
  }
  new->ffs_fix_path = xstrdup(fix_part);

  if (wc_part == NULL) {
    wc_part = "";
  }
  new->ffs_wc_path = xstrdup(wc_part);

  return new;
}

void ff_free_stack_element(ff_stack_T *stack_ptr)
{
  if (stack_ptr == NULL) {
    return;
  }
  xfree(stack_ptr->ffs_fix_path);
  xfree(stack_ptr->ffs_wc_path);
  xfree(stack_ptr);
}

ff_visited_T *ff_create_visited(char *fname, char *wc_path)
{
  ff_visited_T *vp = xmalloc(sizeof(ff_visited_T));

  vp->ffv_next = NULL;
  vp->ffv_fname = xstrdup(fname);
  return vp;
}
