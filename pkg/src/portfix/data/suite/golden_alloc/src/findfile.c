#include "findfile.h"

ff_stack_T *ff_create_stack_element(char_u *fix_part, char_u *wc_part, int level, int star_star_empty)
{
  ff_stack_T *new = ALLOC_ONE(ff_stack_T);

  if (new == NULL) {
    return NULL;
  }
  new->ffs_prev = NULL;
  new->ffs_filearray = NULL;
  new->ffs_filearray_size = 0;
  new->ffs_filearray_cur = 0;
  new->ffs_stage = 0;
  new->ffs_level = level;
  new->ffs_star_star_empty = star_star_empty;

  if (fix_part == NULL) {
    fix_part = (char_u *)"";
  }
  new->ffs_fix_path = vim_strsave(fix_part);

  if (wc_part == NULL) {
    wc_part = (char_u *)"";
  }
  new->ffs_wc_path = vim_strsave(wc_part);

  return new;
}

void ff_free_stack_element(ff_stack_T *stack_ptr)
{
  if (stack_ptr == NULL) {
    return;
  }
  vim_free(stack_ptr->ffs_fix_path);
  vim_free(stack_ptr->ffs_wc_path);
  vim_free(stack_ptr);
}

ff_visited_T *ff_create_visited(char_u *fname, char_u *wc_path)
{
  ff_visited_T *vp = ALLOC_ONE(ff_visited_T);

  vp->ffv_next = NULL;
  vp->ffv_fname = vim_strsave(fname);
  vp->ffv_wc_path = wc_path == NULL ? NULL : vim_strsave(wc_path);
  return vp;
}
